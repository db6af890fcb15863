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
#ifndef PHIRISK_FEATURES_H_
#define PHIRISK_FEATURES_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "phirisk/feature_matrix.h"
#include "phirisk/segment.h"

namespace phirisk {

// Lowercased maximal runs of ASCII alphanumerics, keeping runs of length
// two or more. Any other byte, including non-ASCII, separates tokens.
std::vector<std::string> tokenize(std::string_view text);

// Token to column map. Columns follow lexicographic token order.
class Vocabulary {
 public:
  Vocabulary() = default;

  // tokens need not be sorted or unique.
  explicit Vocabulary(std::vector<std::string> tokens);

  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }
  std::optional<std::uint32_t> find(std::string_view token) const;

  std::uint64_t fingerprint() const;

  bool operator==(const Vocabulary& other) const { return tokens_ == other.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

// Throws kEmptyVocabulary when the sentences yield no token.
Vocabulary build_vocabulary(std::span<const SentenceRecord> train);

// Binary presence matrix; out-of-vocabulary tokens are ignored.
FeatureMatrix vectorize_bow(std::span<const SentenceRecord> sentences,
                            const Vocabulary& vocab);

class EmbeddingTable {
 public:
  explicit EmbeddingTable(std::size_t dimension = 0) : dimension_(dimension) {}

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return words_.size(); }
  const std::vector<std::string>& words() const { return words_; }

  // Returns false (and keeps the existing vector) if word is already present.
  // Throws kDimensionMismatch or kNonFiniteValue on a bad vector.
  bool add(std::string word, std::span<const double> vector);

  std::optional<std::span<const double>> find(std::string_view word) const;
  std::span<const double> vector(std::size_t i) const {
    return {values_.data() + i * dimension_, dimension_};
  }

  std::uint64_t fingerprint() const;

  bool operator==(const EmbeddingTable& other) const {
    return dimension_ == other.dimension_ && words_ == other.words_ &&
           values_ == other.values_;
  }

 private:
  std::size_t dimension_;
  std::vector<std::string> words_;
  std::vector<double> values_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Text vector format: optional "<count> <dimension>" header line, then one
// "<word> <v1> ... <vd>" line per entry. Throws kBadHeader,
// kDimensionMismatch or kNonFiniteValue with the line number.
EmbeddingTable read_embeddings(std::istream& in);
EmbeddingTable load_embeddings(const std::filesystem::path& path);

// Writes a header line and full-precision values.
void write_embeddings(std::ostream& out, const EmbeddingTable& table);

// Occurrence-weighted mean of the in-table token vectors, or the zero vector
// when no token is in the table (then *all_missing is set when non-null).
std::vector<double> embed_sentence(std::span<const std::string> tokens,
                                   const EmbeddingTable& table,
                                   bool* all_missing = nullptr);

// Dense matrix of sentence vectors. *zero_rows counts all-OOV sentences.
FeatureMatrix vectorize_embeddings(std::span<const SentenceRecord> sentences,
                                   const EmbeddingTable& table,
                                   std::size_t* zero_rows = nullptr);

}  // namespace phirisk

#endif  // PHIRISK_FEATURES_H_
