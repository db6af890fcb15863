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
#ifndef PHIRISK_SYNTH_H_
#define PHIRISK_SYNTH_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "phirisk/corpus.h"
#include "phirisk/features.h"
#include "phirisk/segment.h"

namespace phirisk {

// Tag counts of the i2b2 2014 gold test set, in PhiCategory order.
inline constexpr std::array<double, kNumPhiCategories> kDefaultCategoryWeights = {
    1, 2, 8, 13, 82, 92, 117, 136, 140, 179, 190, 195, 215, 260, 422, 764, 875, 879, 1912, 4980,
};

struct SynthConfig {
  std::uint64_t seed = 42;
  std::size_t notes = 100;
  std::size_t min_sentences = 8;
  std::size_t max_sentences = 16;
  double high_fraction = 0.48;
  std::array<double, kNumPhiCategories> category_weights = kDefaultCategoryWeights;
  // Chance that a low-risk draw becomes a section header line instead.
  double header_rate = 0.1;
  std::size_t embedding_dim = 16;

  // Throws kInvalidConfig.
  void validate() const;

  bool operator==(const SynthConfig&) const = default;
};

struct LedgerDocument {
  std::string doc_id;
  std::vector<Span> sentences;  // code point offsets into the TEXT body
  std::vector<int> labels;
  std::vector<PhiTag> tags;

  bool operator==(const LedgerDocument&) const = default;
};

struct GroundTruthLedger {
  SynthConfig config;
  std::vector<LedgerDocument> documents;
  TagCountReport counts;
  LabelSummary labels;

  bool operator==(const GroundTruthLedger&) const = default;
};

struct SynthCorpus {
  std::vector<RawDocument> documents;  // sorted by doc_id
  GroundTruthLedger ledger;
};

SynthCorpus generate_corpus(const SynthConfig& config);

// Vectors for every token in the built-in templates, lexicons and the
// corpus generated from config. Tokens that only occur in PHI fillers or
// high-risk templates sit far from low-risk tokens along the first axis.
EmbeddingTable generate_embeddings(const SynthConfig& config);

std::string ledger_to_json(const GroundTruthLedger& ledger);
GroundTruthLedger ledger_from_json(std::string_view json);

// Writes <out>/corpus/<doc_id>.xml, <out>/ledger.json and
// <out>/embeddings.txt, replacing earlier files of the same names.
void write_synthetic_corpus(const SynthConfig& config, const std::filesystem::path& out);

}  // namespace phirisk

#endif  // PHIRISK_SYNTH_H_
