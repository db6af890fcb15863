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
#include "phirisk/segment.h"

#include <algorithm>
#include <array>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "phirisk/parallel.h"
#include "phirisk/text.h"

namespace phirisk {
namespace {

constexpr std::array<std::string_view, 11> kAbbreviations = {
    "dr", "mr", "mrs", "ms", "st", "vs", "e.g", "i.e", "pt", "hx", "yo",
};

bool equals_ignore_case(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (ascii_lower(a[i]) != ascii_lower(b[i])) return false;
  }
  return true;
}

// True when the '.' at dot is preceded by a word that suppresses a break.
bool ends_abbreviation(std::string_view text, std::size_t begin, std::size_t dot) {
  std::size_t word_start = dot;
  while (word_start > begin && !is_ascii_space(text[word_start - 1])) --word_start;
  while (word_start < dot && !is_ascii_alnum(text[word_start])) ++word_start;
  std::string_view word = text.substr(word_start, dot - word_start);
  if (word.size() == 1 && is_ascii_upper(word[0])) return true;
  return std::any_of(kAbbreviations.begin(), kAbbreviations.end(),
                     [&](std::string_view abbr) { return equals_ignore_case(word, abbr); });
}

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), is_ascii_space);
}

bool is_section_header(std::string_view line) {
  std::size_t b = 0;
  std::size_t e = line.size();
  while (b < e && is_ascii_space(line[b])) ++b;
  while (e > b && is_ascii_space(line[e - 1])) --e;
  if (e - b < 2 || line[e - 1] != ':') return false;
  std::string_view trimmed = line.substr(b, e - b);
  std::size_t chars = 0;
  bool has_letter = false;
  for (char c : trimmed) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++chars;
    if (is_ascii_alnum(c) && !is_ascii_digit(c)) has_letter = true;
  }
  return has_letter && chars <= kMaxHeaderLength;
}

// Splits [begin, end) by the terminator rule, appending byte spans.
void split_region(std::string_view text, std::size_t begin, std::size_t end,
                  std::vector<Span>& out) {
  std::size_t piece = begin;
  for (std::size_t i = begin; i < end; ++i) {
    char c = text[i];
    if (c != '.' && c != '!' && c != '?') continue;
    if (i + 1 >= end || !is_ascii_space(text[i + 1])) continue;
    std::size_t next = i + 1;
    while (next < end && is_ascii_space(text[next])) ++next;
    if (next < end && !is_ascii_upper(text[next]) && !is_ascii_digit(text[next])) {
      continue;
    }
    if (c == '.' && ends_abbreviation(text, begin, i)) continue;
    out.push_back({piece, i + 1});
    piece = i + 1;
  }
  out.push_back({piece, end});
}

}  // namespace

std::vector<Span> split_sentences(std::string_view text) {
  // Hard regions from blank lines and header lines, in bytes.
  std::vector<Span> regions;
  std::size_t region_start = 0;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::string_view line = text.substr(line_start, line_end - line_start);
    if (is_blank(line)) {
      if (line_end < text.size()) {
        regions.push_back({region_start, line_start});
        region_start = line_end;
      }
    } else if (is_section_header(line)) {
      regions.push_back({region_start, line_start});
      regions.push_back({line_start, line_end});
      region_start = line_end;
    }
    line_start = line_end + 1;
  }
  regions.push_back({region_start, text.size()});

  std::vector<Span> pieces;
  for (const Span& region : regions) {
    if (region.start < region.end) split_region(text, region.start, region.end, pieces);
  }

  CharIndex index(text);
  std::vector<Span> spans;
  spans.reserve(pieces.size());
  for (Span piece : pieces) {
    while (piece.start < piece.end && is_ascii_space(text[piece.start])) ++piece.start;
    while (piece.end > piece.start && is_ascii_space(text[piece.end - 1])) --piece.end;
    if (piece.start == piece.end) continue;
    spans.push_back({index.char_offset(piece.start), index.char_offset(piece.end)});
  }
  return spans;
}

std::vector<SentenceRecord> label_sentences(const RawDocument& doc) {
  std::vector<Span> spans = split_sentences(doc.text);
  CharIndex index(doc.text);
  std::vector<SentenceRecord> records;
  records.reserve(spans.size());
  for (std::size_t i = 0; i < spans.size(); ++i) {
    SentenceRecord record;
    record.doc_id = doc.doc_id;
    record.index = i;
    record.start = spans[i].start;
    record.end = spans[i].end;
    record.text = std::string(index.slice(doc.text, record.start, record.end));
    for (const PhiTag& tag : doc.tags) {
      if (tag.start >= record.end) break;  // tags are sorted by start
      if (tag.end > record.start) {
        record.tags.push_back({tag.category, tag.start, tag.end});
      }
    }
    record.label = record.tags.empty() ? 0 : 1;
    records.push_back(std::move(record));
  }
  return records;
}

std::vector<SentenceRecord> label_corpus(std::span<const RawDocument> docs) {
  std::vector<std::vector<SentenceRecord>> per_doc(docs.size());
  parallel_for(docs.size(), [&](std::size_t i) { per_doc[i] = label_sentences(docs[i]); });
  std::vector<SentenceRecord> records;
  for (auto& doc_records : per_doc) {
    std::move(doc_records.begin(), doc_records.end(), std::back_inserter(records));
  }
  return records;
}

LabelSummary corpus_label_summary(std::span<const SentenceRecord> records) {
  LabelSummary summary;
  for (const SentenceRecord& record : records) {
    if (record.label == 1) {
      ++summary.high;
    } else {
      ++summary.low;
    }
  }
  summary.total = summary.low + summary.high;
  return summary;
}

std::string render_label_summary(const LabelSummary& summary) {
  std::ostringstream out;
  out << std::left << std::setw(8) << "" << std::right << std::setw(10) << "Total"
      << "\n"
      << std::left << std::setw(8) << "Low" << std::right << std::setw(10)
      << summary.low << "\n"
      << std::left << std::setw(8) << "High" << std::right << std::setw(10)
      << summary.high << "\n"
      << std::left << std::setw(8) << "Total" << std::right << std::setw(10)
      << summary.total << "\n";
  return out.str();
}

std::string sentence_to_json(const SentenceRecord& record) {
  nlohmann::ordered_json object;
  object["doc_id"] = record.doc_id;
  object["index"] = record.index;
  object["start"] = record.start;
  object["end"] = record.end;
  object["text"] = record.text;
  object["label"] = record.label;
  auto tags = nlohmann::ordered_json::array();
  for (const TagSpan& tag : record.tags) {
    nlohmann::ordered_json entry;
    entry["category"] = category_name(tag.category);
    entry["start"] = tag.start;
    entry["end"] = tag.end;
    tags.push_back(std::move(entry));
  }
  object["tags"] = std::move(tags);
  return object.dump();
}

void write_jsonl(std::ostream& out, std::span<const SentenceRecord> records) {
  for (const SentenceRecord& record : records) out << sentence_to_json(record) << '\n';
}

std::vector<SentenceRecord> read_jsonl(std::istream& in) {
  std::vector<SentenceRecord> records;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (is_blank(line)) continue;
    try {
      auto object = nlohmann::json::parse(line);
      SentenceRecord record;
      record.doc_id = object.at("doc_id").get<std::string>();
      record.index = object.at("index").get<std::size_t>();
      record.start = object.at("start").get<std::size_t>();
      record.end = object.at("end").get<std::size_t>();
      record.text = object.at("text").get<std::string>();
      record.label = object.at("label").get<int>();
      for (const auto& tag : object.at("tags")) {
        auto category = parse_category(tag.at("category").get<std::string>());
        if (!category) throw Error(ErrorCode::kUnknownCategory, tag.dump());
        record.tags.push_back({*category, tag.at("start").get<std::size_t>(),
                               tag.at("end").get<std::size_t>()});
      }
      if (record.label != (record.tags.empty() ? 0 : 1)) {
        throw Error(ErrorCode::kMalformedRecord, "label disagrees with tags");
      }
      records.push_back(std::move(record));
    } catch (const std::exception& e) {
      throw Error(ErrorCode::kMalformedRecord,
                  "line " + std::to_string(line_number) + ": " + e.what());
    }
  }
  return records;
}

}  // namespace phirisk
