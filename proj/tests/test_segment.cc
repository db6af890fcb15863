// Copyright 2026 The phirisk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <random>
#include <sstream>

#include "doctest.h"
#include "phirisk/segment.h"
#include "phirisk/text.h"
#include "test_support.h"

using namespace phirisk;

namespace {

std::vector<std::string> pieces(std::string_view text) {
  CharIndex index(text);
  std::vector<std::string> out;
  for (const Span& s : split_sentences(text)) out.emplace_back(index.slice(text, s.start, s.end));
  return out;
}

bool is_space_cp(std::string_view cp) { return cp.size() == 1 && is_ascii_space(cp[0]); }

// Disjoint, sorted, trimmed, and every non-whitespace code point covered.
void check_coverage(std::string_view text) {
  CharIndex index(text);
  auto spans = split_sentences(text);
  std::vector<int> owner(index.size(), -1);
  std::size_t previous_end = 0;
  for (std::size_t i = 0; i < spans.size(); ++i) {
    REQUIRE(spans[i].start < spans[i].end);
    REQUIRE(spans[i].start >= previous_end);
    previous_end = spans[i].end;
    CHECK_FALSE(is_space_cp(index.slice(text, spans[i].start, spans[i].start + 1)));
    CHECK_FALSE(is_space_cp(index.slice(text, spans[i].end - 1, spans[i].end)));
    for (std::size_t c = spans[i].start; c < spans[i].end; ++c) owner[c] = static_cast<int>(i);
  }
  for (std::size_t c = 0; c < index.size(); ++c) {
    if (owner[c] < 0) CHECK(is_space_cp(index.slice(text, c, c + 1)));
  }
}

}  // namespace

TEST_SUITE("segment") {

TEST_CASE("terminator rule") {
  auto p = pieces("The patient is well. Follow up in 2 weeks.");
  REQUIRE(p.size() == 2);
  CHECK(p[0] == "The patient is well.");
  CHECK(p[1] == "Follow up in 2 weeks.");
  CHECK(split_sentences("").empty());
  CHECK(split_sentences(" \n\n \t").empty());
  CHECK(pieces("Stable! 3 drops given? Yes.") ==
        std::vector<std::string>{"Stable!", "3 drops given?", "Yes."});
  CHECK(pieces("Dose was 2.5 mg. then stopped.") ==
        std::vector<std::string>{"Dose was 2.5 mg. then stopped."});
}

TEST_CASE("abbreviations and initials do not end sentences") {
  CHECK(pieces("Seen by Dr. Jones today. Stable.") ==
        std::vector<std::string>{"Seen by Dr. Jones today.", "Stable."});
  CHECK(pieces("Mrs. Quill and Mr. Vex met. Then left.").size() == 2);
  CHECK(pieces("Lives on Main St. Boston is near.").size() == 1);
  CHECK(pieces("Met John Q. Public today.").size() == 1);
  CHECK(pieces("Meds e.g. Aspirin. Pt. Stable.") ==
        std::vector<std::string>{"Meds e.g. Aspirin.", "Pt. Stable."});
  CHECK(pieces("A 54 yo. Male with Hx. Of asthma.").size() == 1);
}

TEST_CASE("blank lines and headers") {
  auto p = pieces("Chest pain\n\nno fever\nMEDICATIONS:\naspirin daily\n  \nok");
  CHECK(p == std::vector<std::string>{"Chest pain", "no fever", "MEDICATIONS:", "aspirin daily",
                                      "ok"});
  // Too long to be a header, so the line joins its neighbours.
  auto q = pieces("this line is a very long line that happens to end in a colon:\nnext");
  CHECK(q.size() == 1);
  // No letter, so not a header.
  CHECK(pieces("a\n12:\nb").size() == 1);
}

TEST_CASE("spans are code point offsets") {
  std::string text = "Zoë is well. Under review ë.";
  auto spans = split_sentences(text);
  REQUIRE(spans.size() == 2);
  CHECK(spans[0] == Span{0, 12});
  CHECK(spans[1] == Span{13, 28});
}

TEST_CASE("coverage over random text") {
  const std::vector<std::string> alphabet = {"a", "b", "A", "Z", "1", ".", ".", " ", " ",
                                             "\n", "\n", ":", "!", "?", "ë", "\t", "Dr", "e.g"};
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    std::string text;
    std::size_t length = rng() % 80;
    for (std::size_t i = 0; i < length; ++i) text += alphabet[rng() % alphabet.size()];
    CAPTURE(text);
    check_coverage(text);
    CHECK(split_sentences(text) == split_sentences(text));
  }
}

TEST_CASE("labels use span intersection") {
  // Sentences: [0,30) and [31,61).
  RawDocument doc;
  doc.doc_id = "d";
  doc.text = "Aaaa aaaa 2089-04-12 aaaaaaaa. Bbbbbbbbb bbbbbbbbb bbbbbbbbbb.";
  auto records = label_sentences(doc);
  REQUIRE(records.size() == 2);
  CHECK(records[0].start == 0);
  CHECK(records[0].end == 30);
  CHECK(records[1].start == 31);
  CHECK(records[0].label == 0);
  CHECK(records[1].label == 0);

  doc.tags = {{"P0", PhiCategory::kDate, 10, 20, "2089-04-12"}};
  records = label_sentences(doc);
  CHECK(records[0].label == 1);
  CHECK(records[0].tags == std::vector<TagSpan>{{PhiCategory::kDate, 10, 20}});
  CHECK(records[1].label == 0);

  // A tag straddling the boundary marks both sentences.
  doc.tags.push_back({"P1", PhiCategory::kCity, 25, 35, "aaaa. Bbbb"});
  records = label_sentences(doc);
  CHECK(records[0].label == 1);
  CHECK(records[1].label == 1);
  CHECK(records[1].tags.size() == 1);
  CHECK(records[0].text == "Aaaa aaaa 2089-04-12 aaaaaaaa.");
  CHECK(records[1].key() == "d#1");
}

TEST_CASE("adding tags never lowers a label") {
  std::mt19937_64 rng(5);
  RawDocument doc{"m", "One two. Three four five.\n\nSix seven. Eight!", {}};
  std::size_t length = CharIndex(doc.text).size();
  auto before = label_sentences(doc);
  for (int i = 0; i < 50; ++i) {
    std::size_t start = rng() % (length - 1);
    std::size_t end = start + 1 + rng() % (length - start);
    if (end > length) end = length;
    doc.tags.push_back({"P" + std::to_string(i), PhiCategory::kAge, start, end, ""});
    std::sort(doc.tags.begin(), doc.tags.end(), [](const PhiTag& a, const PhiTag& b) {
      return std::tie(a.start, a.end) < std::tie(b.start, b.end);
    });
    auto after = label_sentences(doc);
    REQUIRE(after.size() == before.size());
    for (std::size_t s = 0; s < after.size(); ++s) CHECK(after[s].label >= before[s].label);
    before = after;
  }
}

TEST_CASE("label summary") {
  CHECK(corpus_label_summary({}) == LabelSummary{0, 0, 0});
  std::vector<SentenceRecord> records(3);
  records[1].label = 1;
  CHECK(corpus_label_summary(records) == LabelSummary{2, 1, 3});
  std::string table = render_label_summary({2, 1, 3});
  CHECK(table.find("Low") != std::string::npos);
  CHECK(table.find("High") != std::string::npos);
}

TEST_CASE("jsonl round trip and validation") {
  RawDocument doc{"doc-1", "Seen by Dr. Jones.\nHe is \"fine\" ë.", {}};
  doc.tags = {{"P0", PhiCategory::kDoctor, 12, 17, "Jones"}};
  auto records = label_sentences(doc);
  std::stringstream stream;
  write_jsonl(stream, records);
  CHECK(read_jsonl(stream) == records);

  std::string line = sentence_to_json(records[0]);
  CHECK(line.rfind("{\"doc_id\":\"doc-1\",\"index\":0,\"start\":0", 0) == 0);

  std::stringstream bad("{\"doc_id\":\"x\"}\n");
  CHECK(testing::error_of([&] { read_jsonl(bad); }) == ErrorCode::kMalformedRecord);
  std::stringstream mislabeled(
      "{\"doc_id\":\"x\",\"index\":0,\"start\":0,\"end\":1,\"text\":\"a\",\"label\":1,\"tags\":[]}\n");
  CHECK(testing::error_of([&] { read_jsonl(mislabeled); }) == ErrorCode::kMalformedRecord);
}

}  // TEST_SUITE
