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
#include "phirisk/features.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "phirisk/error.h"
#include "phirisk/text.h"

namespace phirisk {

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_ascii_alnum(text[i])) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < text.size() && is_ascii_alnum(text[i])) ++i;
    if (i - start >= 2) {
      std::string token(text.substr(start, i - start));
      for (char& c : token) c = ascii_lower(c);
      tokens.push_back(std::move(token));
    }
  }
  return tokens;
}

Vocabulary::Vocabulary(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  std::sort(tokens_.begin(), tokens_.end());
  tokens_.erase(std::unique(tokens_.begin(), tokens_.end()), tokens_.end());
  index_.reserve(tokens_.size());
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    index_.emplace(tokens_[i], static_cast<std::uint32_t>(i));
  }
}

std::optional<std::uint32_t> Vocabulary::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t Vocabulary::fingerprint() const {
  std::uint64_t hash = fnv1a64("bow");
  for (const auto& token : tokens_) {
    hash = fnv1a64(token, hash);
    hash = fnv1a64("\n", hash);
  }
  return hash;
}

Vocabulary build_vocabulary(std::span<const SentenceRecord> train) {
  std::set<std::string> distinct;
  for (const SentenceRecord& record : train) {
    for (auto& token : tokenize(record.text)) distinct.insert(std::move(token));
  }
  if (distinct.empty()) {
    throw Error(ErrorCode::kEmptyVocabulary,
                "training sentences contain no token of length >= 2");
  }
  return Vocabulary(std::vector<std::string>(distinct.begin(), distinct.end()));
}

FeatureMatrix vectorize_bow(std::span<const SentenceRecord> sentences,
                            const Vocabulary& vocab) {
  std::vector<std::vector<std::uint32_t>> rows(sentences.size());
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    for (const auto& token : tokenize(sentences[i].text)) {
      if (auto col = vocab.find(token)) rows[i].push_back(*col);
    }
  }
  return FeatureMatrix::binary(FeatureKind::kBow, vocab.size(), std::move(rows));
}

bool EmbeddingTable::add(std::string word, std::span<const double> vector) {
  if (vector.size() != dimension_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "vector for \"" + word + "\" has " + std::to_string(vector.size()) +
                    " components, expected " + std::to_string(dimension_));
  }
  for (double v : vector) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNonFiniteValue, "vector for \"" + word + "\"");
    }
  }
  if (index_.count(word) != 0) return false;
  index_.emplace(word, words_.size());
  words_.push_back(std::move(word));
  values_.insert(values_.end(), vector.begin(), vector.end());
  return true;
}

std::optional<std::span<const double>> EmbeddingTable::find(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return vector(it->second);
}

std::uint64_t EmbeddingTable::fingerprint() const {
  std::uint64_t hash = fnv1a64("w2v " + std::to_string(dimension_));
  for (std::size_t i = 0; i < words_.size(); ++i) {
    hash = fnv1a64(words_[i], hash);
    for (double v : vector(i)) {
      auto bits = std::bit_cast<std::uint64_t>(v);
      char bytes[8];
      for (int b = 0; b < 8; ++b) bytes[b] = static_cast<char>((bits >> (8 * b)) & 0xFF);
      hash = fnv1a64(std::string_view(bytes, 8), hash);
    }
  }
  return hash;
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_ascii_space(line[i])) ++i;
    std::size_t start = i;
    while (i < line.size() && !is_ascii_space(line[i])) ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

template <typename T>
std::optional<T> parse_number(std::string_view field) {
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) return std::nullopt;
  return value;
}

}  // namespace

EmbeddingTable read_embeddings(std::istream& in) {
  std::string line;
  std::size_t line_number = 0;
  auto where = [&] { return "line " + std::to_string(line_number) + ": "; };

  // Skip leading blank lines.
  std::vector<std::string_view> fields;
  while (std::getline(in, line)) {
    ++line_number;
    fields = split_fields(line);
    if (!fields.empty()) break;
  }
  if (fields.empty()) throw Error(ErrorCode::kBadHeader, "empty embedding file");

  std::optional<std::size_t> declared_count;
  std::size_t dimension = 0;
  bool first_is_entry = true;
  if (fields.size() == 2 && parse_number<std::size_t>(fields[0])) {
    auto dim = parse_number<std::size_t>(fields[1]);
    if (!dim || *dim == 0) {
      throw Error(ErrorCode::kBadHeader, where() + "bad header \"" + line + "\"");
    }
    declared_count = parse_number<std::size_t>(fields[0]);
    dimension = *dim;
    first_is_entry = false;
  }
  if (first_is_entry) {
    if (fields.size() < 2) {
      throw Error(ErrorCode::kBadHeader, where() + "no vector components");
    }
    dimension = fields.size() - 1;
  }

  EmbeddingTable table(dimension);
  std::size_t entries = 0;
  std::vector<double> vector;
  auto consume = [&] {
    if (fields.size() != dimension + 1) {
      throw Error(ErrorCode::kDimensionMismatch,
                  where() + std::to_string(fields.size() - 1) +
                      " components, expected " + std::to_string(dimension));
    }
    vector.clear();
    for (std::size_t k = 1; k < fields.size(); ++k) {
      auto value = parse_number<double>(fields[k]);
      if (!value || !std::isfinite(*value)) {
        throw Error(ErrorCode::kNonFiniteValue,
                    where() + "component \"" + std::string(fields[k]) + "\"");
      }
      vector.push_back(*value);
    }
    table.add(std::string(fields[0]), vector);
    ++entries;
  };
  if (first_is_entry) consume();
  while (std::getline(in, line)) {
    ++line_number;
    fields = split_fields(line);
    if (fields.empty()) continue;
    consume();
  }
  if (declared_count && *declared_count != entries) {
    throw Error(ErrorCode::kBadHeader,
                "header declares " + std::to_string(*declared_count) +
                    " vectors, file holds " + std::to_string(entries));
  }
  return table;
}

EmbeddingTable load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return read_embeddings(in);
}

void write_embeddings(std::ostream& out, const EmbeddingTable& table) {
  out << table.size() << ' ' << table.dimension() << '\n';
  for (std::size_t i = 0; i < table.size(); ++i) {
    out << table.words()[i];
    for (double v : table.vector(i)) out << ' ' << format_double(v);
    out << '\n';
  }
}

std::vector<double> embed_sentence(std::span<const std::string> tokens,
                                   const EmbeddingTable& table, bool* all_missing) {
  std::vector<double> mean(table.dimension(), 0.0);
  std::size_t found = 0;
  for (const auto& token : tokens) {
    auto vector = table.find(token);
    if (!vector) continue;
    for (std::size_t k = 0; k < mean.size(); ++k) mean[k] += (*vector)[k];
    ++found;
  }
  if (found > 0) {
    for (double& v : mean) v /= static_cast<double>(found);
  }
  if (all_missing != nullptr) *all_missing = found == 0;
  return mean;
}

FeatureMatrix vectorize_embeddings(std::span<const SentenceRecord> sentences,
                                   const EmbeddingTable& table, std::size_t* zero_rows) {
  std::vector<double> values;
  values.reserve(sentences.size() * table.dimension());
  std::size_t zeros = 0;
  for (const SentenceRecord& record : sentences) {
    bool missing = false;
    auto row = embed_sentence(tokenize(record.text), table, &missing);
    if (missing) ++zeros;
    values.insert(values.end(), row.begin(), row.end());
  }
  if (zero_rows != nullptr) *zero_rows = zeros;
  auto m = FeatureMatrix::dense(FeatureKind::kEmbedding, table.dimension(), std::move(values));
  return m;
}

}  // namespace phirisk
