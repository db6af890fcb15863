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
#include "doctest.h"
#include "phirisk/corpus.h"
#include "phirisk/text.h"
#include "test_support.h"

using namespace phirisk;

namespace {

std::string xml(const std::string& text, const std::string& tags) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\" ?>\n<deIdi2b2>\n<TEXT><![CDATA[" + text +
         "]]></TEXT>\n<TAGS>\n" + tags + "</TAGS>\n</deIdi2b2>\n";
}

// 40 characters; "2089-04-12" occupies [10, 20).
const std::string kNote = "Admitted: 2089-04-12 for chest pain now.";

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("minimal document with one tag") {
  REQUIRE(kNote.size() == 40);
  auto doc = parse_document(
      xml(kNote, "<DATE id=\"P0\" start=\"10\" end=\"20\" text=\"2089-04-12\" TYPE=\"DATE\" />\n"),
      "note");
  CHECK(doc.doc_id == "note");
  CHECK(doc.text == kNote);
  REQUIRE(doc.tags.size() == 1);
  CHECK(doc.tags[0].category == PhiCategory::kDate);
  CHECK(doc.tags[0].parent_category() == PhiParent::kDate);
  CHECK(doc.tags[0].start == 10);
  CHECK(doc.tags[0].end == 20);
  CHECK(doc.tags[0].literal == "2089-04-12");
  CHECK(doc.tags[0].tag_id == "P0");
}

TEST_CASE("tags are sorted by offset regardless of file order") {
  std::string text = "Dr. Jones saw Ann on 2089-04-12.";
  auto doc = parse_document(
      xml(text,
          "<DATE id=\"P2\" start=\"21\" end=\"31\" text=\"2089-04-12\" />\n"
          "<PATIENT id=\"P1\" start=\"14\" end=\"17\" text=\"Ann\" />\n"
          "<DOCTOR id=\"P0\" start=\"4\" end=\"9\" text=\"Jones\" />\n"),
      "d");
  REQUIRE(doc.tags.size() == 3);
  CHECK(doc.tags[0].tag_id == "P0");
  CHECK(doc.tags[1].tag_id == "P1");
  CHECK(doc.tags[2].tag_id == "P2");
}

TEST_CASE("parent element with TYPE attribute resolves to the leaf") {
  std::string text = "Seen by Dr. Jones today.";
  auto doc = parse_document(
      xml(text, "<NAME id=\"P0\" start=\"12\" end=\"17\" text=\"Jones\" TYPE=\"DOCTOR\" />\n"), "d");
  REQUIRE(doc.tags.size() == 1);
  CHECK(doc.tags[0].category == PhiCategory::kDoctor);
  CHECK(doc.tags[0].parent_category() == PhiParent::kName);

  CHECK(testing::error_of([&] {
          parse_document(
              xml(text, "<NAME id=\"P0\" start=\"12\" end=\"17\" text=\"Jones\" TYPE=\"CITY\" />\n"),
              "d");
        }) == ErrorCode::kUnknownCategory);
}

TEST_CASE("literal mismatch is an error unless lenient") {
  std::string text = "Seen by Dr. Jones today.";
  std::string bytes =
      xml(text, "<DOCTOR id=\"P0\" start=\"12\" end=\"17\" text=\"Smith\" />\n");
  CHECK(testing::error_of([&] { parse_document(bytes, "d"); }) == ErrorCode::kLiteralMismatch);
  try {
    parse_document(bytes, "d");
  } catch (const Error& e) {
    std::string message = e.what();
    CHECK(message.find("Smith") != std::string::npos);
    CHECK(message.find("Jones") != std::string::npos);
  }
  std::vector<std::string> warnings;
  auto doc = parse_document(bytes, "d", {.lenient = true}, &warnings);
  CHECK(doc.tags.size() == 1);
  CHECK(warnings.size() == 1);
}

TEST_CASE("structural errors") {
  std::string text = "Seen by Dr. Jones today.";
  CHECK(testing::error_of([&] { parse_document("<a><TEXT>x</TEXT>", "d"); }) ==
        ErrorCode::kMalformedXml);
  CHECK(testing::error_of([&] { parse_document("<a><TAGS></TAGS></a>", "d"); }) ==
        ErrorCode::kMissingSection);
  CHECK(testing::error_of([&] { parse_document("<a><TEXT>x</TEXT></a>", "d"); }) ==
        ErrorCode::kMissingSection);
  CHECK(testing::error_of([&] {
          parse_document(xml(text, "<DOCTOR id=\"P0\" start=\"12\" end=\"99\" text=\"x\" />\n"), "d");
        }) == ErrorCode::kOffsetOutOfBounds);
  CHECK(testing::error_of([&] {
          parse_document(xml(text, "<DOCTOR id=\"P0\" start=\"5\" end=\"5\" text=\"\" />\n"), "d");
        }) == ErrorCode::kOffsetOutOfBounds);
  CHECK(testing::error_of([&] {
          parse_document(xml(text, "<VILLAIN id=\"P0\" start=\"12\" end=\"17\" text=\"Jones\" />\n"),
                         "d");
        }) == ErrorCode::kUnknownCategory);
  CHECK(testing::error_of([&] {
          parse_document(xml(text, "<DOCTOR id=\"P0\" start=\"a\" end=\"17\" text=\"Jones\" />\n"),
                         "d");
        }) == ErrorCode::kMalformedXml);
  CHECK(testing::error_of([&] { parse_document(std::string("<a>\xff</a>"), "d"); }) ==
        ErrorCode::kMalformedXml);
}

TEST_CASE("offsets count code points and line endings are normalized") {
  std::string text = "Zoë\r\nvisited Zürich on Monday.";
  // After CRLF -> LF: "Zoë\nvisited Zürich on Monday."; Zürich is [12, 18).
  auto doc = parse_document(
      xml(text, "<CITY id=\"P0\" start=\"12\" end=\"18\" text=\"Zürich\" />\n"), "d");
  CHECK(doc.text == "Zoë\nvisited Zürich on Monday.");
  REQUIRE(doc.tags.size() == 1);
  CharIndex index(doc.text);
  CHECK(index.slice(doc.text, 12, 18) == "Zürich");
}

TEST_CASE("serialize then parse reproduces the document") {
  RawDocument doc;
  doc.doc_id = "rt";
  doc.text = "Odd ]]> marker & <angle> \"quotes\"\nfrom Zoë Quill.\n";
  doc.tags = {{"P0", PhiCategory::kPatient, 39, 48, "Zoë Quill"}};
  CharIndex index(doc.text);
  REQUIRE(index.slice(doc.text, 39, 48) == "Zoë Quill");
  auto back = parse_document(serialize_document(doc), "rt");
  CHECK(back == doc);

  RawDocument multi;
  multi.doc_id = "ml";
  multi.text = "Lives at 12 Zephyr\nLane with family.";
  multi.tags = {{"P0", PhiCategory::kStreet, 9, 23, "12 Zephyr\nLane"}};
  CHECK(parse_document(serialize_document(multi), "ml") == multi);
}

TEST_CASE("load_corpus collects failures and sorts documents") {
  testing::TempDir dir("corpus");
  std::string good = xml(kNote, "<DATE id=\"P0\" start=\"10\" end=\"20\" text=\"2089-04-12\" />\n");
  testing::write(dir.path() / "b.xml", good);
  testing::write(dir.path() / "a.xml", good);
  testing::write(dir.path() / "c.xml", "<broken");
  testing::write(dir.path() / "notes.txt", "ignored");
  auto load = load_corpus(dir.path());
  REQUIRE(load.documents.size() == 2);
  CHECK(load.documents[0].doc_id == "a");
  CHECK(load.documents[1].doc_id == "b");
  REQUIRE(load.failures.size() == 1);
  CHECK(load.failures[0].file == "c.xml");
  CHECK(load.failures[0].code == ErrorCode::kMalformedXml);

  testing::TempDir empty("empty");
  CHECK(testing::error_of([&] { load_corpus(empty.path()); }) == ErrorCode::kEmptyCorpus);
  try {
    load_corpus(empty.path());
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("no parseable documents") != std::string::npos);
  }
}

TEST_CASE("stats count every tag by leaf category") {
  RawDocument a{"a", "Jones met Smith on 2089-04-12.", {}};
  a.tags = {{"P0", PhiCategory::kDoctor, 0, 5, "Jones"},
            {"P1", PhiCategory::kDoctor, 10, 15, "Smith"},
            {"P2", PhiCategory::kDate, 19, 29, "2089-04-12"}};
  RawDocument b{"b", "Nothing here.", {}};
  std::vector<RawDocument> docs{a, b};
  auto stats = corpus_stats(docs);
  CHECK(stats.count(PhiCategory::kDoctor) == 2);
  CHECK(stats.count(PhiCategory::kDate) == 1);
  CHECK(stats.total == 3);

  auto empty = corpus_stats({});
  CHECK(empty.total == 0);

  std::string csv = render_stats_csv(stats);
  std::istringstream lines(csv);
  std::vector<std::string> rows;
  for (std::string line; std::getline(lines, line);) rows.push_back(line);
  REQUIRE(rows.size() == 22);
  CHECK(rows.front() == "category,count");
  CHECK(rows[1] == "EMAIL,0");
  CHECK(rows[20] == "DATE,1");
  CHECK(rows.back() == "TOTAL,3");
}

TEST_CASE("category taxonomy") {
  CHECK(kAllPhiCategories.size() == 20);
  CHECK(parent_of(PhiCategory::kEmail) == PhiParent::kContact);
  CHECK(parent_of(PhiCategory::kHospital) == PhiParent::kLocation);
  CHECK(parent_of(PhiCategory::kMedicalRecord) == PhiParent::kId);
  CHECK(parent_of(PhiCategory::kProfession) == PhiParent::kProfession);
  CHECK(parent_of(PhiCategory::kAge) == PhiParent::kAge);
  for (PhiCategory c : kAllPhiCategories) {
    CHECK(parse_category(category_name(c)) == c);
    CHECK(parent_of(c) != PhiParent::kUnnamed);
  }
  CHECK(category_name(PhiCategory::kLocationOther) == "LOCATION-OTHER");
  CHECK_FALSE(parse_category("NAME").has_value());
}

}  // TEST_SUITE
