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
#ifndef PHIRISK_CORPUS_H_
#define PHIRISK_CORPUS_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phirisk/error.h"
#include "phirisk/phi_category.h"

namespace phirisk {

// One gold-standard PHI annotation. Offsets are code points into the
// newline-normalized note text, end exclusive.
struct PhiTag {
  std::string tag_id;
  PhiCategory category = PhiCategory::kDate;
  std::size_t start = 0;
  std::size_t end = 0;
  std::string literal;

  PhiParent parent_category() const { return parent_of(category); }

  bool operator==(const PhiTag&) const = default;
};

// A parsed clinical note. Tags are sorted by (start, end).
struct RawDocument {
  std::string doc_id;
  std::string text;
  std::vector<PhiTag> tags;

  bool operator==(const RawDocument&) const = default;
};

struct TagCountReport {
  std::array<std::size_t, kNumPhiCategories> counts{};
  std::size_t total = 0;

  std::size_t count(PhiCategory category) const {
    return counts[category_index(category)];
  }

  bool operator==(const TagCountReport&) const = default;
};

struct ParseOptions {
  // Keep tags whose literal disagrees with the text span, emitting a warning
  // instead of failing.
  bool lenient = false;
};

// Parses one i2b2-style XML document: a root element holding a TEXT element
// (normally a CDATA body) and a TAGS element whose children are the PHI
// annotations. Children may be named by leaf category (<DATE .../>) or, as
// in the distributed gold files, by parent group with the leaf in TYPE
// (<NAME TYPE="DOCTOR" .../>).
//
// Throws Error with kMalformedXml, kMissingSection, kOffsetOutOfBounds,
// kLiteralMismatch or kUnknownCategory. Warnings produced in lenient mode are
// appended to *warnings when it is non-null.
RawDocument parse_document(std::string_view xml_bytes, std::string doc_id,
                           const ParseOptions& options = {},
                           std::vector<std::string>* warnings = nullptr);

// Inverse of parse_document for well-formed documents.
std::string serialize_document(const RawDocument& doc);

struct LoadOptions {
  std::string glob = "*.xml";
  ParseOptions parse;
};

struct LoadFailure {
  std::string file;
  ErrorCode code = ErrorCode::kMalformedXml;
  std::string message;
};

struct CorpusLoad {
  std::vector<RawDocument> documents;  // sorted by doc_id
  std::vector<LoadFailure> failures;   // sorted by file name
  std::vector<std::string> warnings;
};

// Parses every file in directory matching options.glob. doc_id is the file
// name without its extension. Per-file failures are collected, not thrown.
// Throws kEmptyCorpus when no file parses (the message lists the failures)
// and kIo when the directory cannot be read.
CorpusLoad load_corpus(const std::filesystem::path& directory,
                       const LoadOptions& options = {});

TagCountReport corpus_stats(std::span<const RawDocument> docs);

// "category,count" rows in category order followed by a TOTAL row.
std::string render_stats_csv(const TagCountReport& report);
std::string render_stats_table(const TagCountReport& report);

}  // namespace phirisk

#endif  // PHIRISK_CORPUS_H_
