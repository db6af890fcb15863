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
#ifndef PHIRISK_SEGMENT_H_
#define PHIRISK_SEGMENT_H_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phirisk/corpus.h"

namespace phirisk {

// Half-open [start, end) in code points.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  bool operator==(const Span&) const = default;
};

// The part of a PhiTag a sentence record carries.
struct TagSpan {
  PhiCategory category = PhiCategory::kDate;
  std::size_t start = 0;
  std::size_t end = 0;

  bool operator==(const TagSpan&) const = default;
};

struct SentenceRecord {
  std::string doc_id;
  std::size_t index = 0;
  std::size_t start = 0;
  std::size_t end = 0;
  std::string text;
  std::vector<TagSpan> tags;  // every tag intersecting [start, end)
  int label = 0;              // 1 (high risk) iff tags is non-empty

  // Stable identity across the pipeline: "<doc_id>#<index>".
  std::string key() const { return doc_id + "#" + std::to_string(index); }

  bool operator==(const SentenceRecord&) const = default;
};

struct LabelSummary {
  std::size_t low = 0;
  std::size_t high = 0;
  std::size_t total = 0;

  bool operator==(const LabelSummary&) const = default;
};

// Deterministic rule-based sentence splitter. Boundaries:
//   - '.', '!' or '?' followed by whitespace and then an uppercase ASCII
//     letter, a digit, or the end of the text;
//   - a blank line (only whitespace between two newlines);
//   - a short line ending in ':' is a sentence on its own.
// A '.' directly after one of the abbreviations in kAbbreviations (case
// insensitive) or after a single capital letter never ends a sentence.
// Spans are trimmed of surrounding whitespace; empty spans are dropped.
std::vector<Span> split_sentences(std::string_view text);

// Longest trimmed line, in code points, still treated as a section header.
inline constexpr std::size_t kMaxHeaderLength = 40;

std::vector<SentenceRecord> label_sentences(const RawDocument& doc);

// label_sentences over a corpus, concatenated in document order.
std::vector<SentenceRecord> label_corpus(std::span<const RawDocument> docs);

LabelSummary corpus_label_summary(std::span<const SentenceRecord> records);

std::string render_label_summary(const LabelSummary& summary);

// One JSON object per line with fields doc_id, index, start, end, text,
// label, tags ([{category, start, end}]) in that order.
std::string sentence_to_json(const SentenceRecord& record);
void write_jsonl(std::ostream& out, std::span<const SentenceRecord> records);

// Throws kMalformedRecord naming the offending line.
std::vector<SentenceRecord> read_jsonl(std::istream& in);

}  // namespace phirisk

#endif  // PHIRISK_SEGMENT_H_
