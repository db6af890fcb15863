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
#ifndef PHIRISK_FEATURE_MATRIX_H_
#define PHIRISK_FEATURE_MATRIX_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace phirisk {

enum class FeatureKind {
  kBow,        // binary unigram presence
  kEmbedding,  // averaged word vectors
};

std::string_view feature_kind_name(FeatureKind kind);  // "bow" / "w2v"
std::optional<FeatureKind> parse_feature_kind(std::string_view name);

// Row-per-sentence features. Storage is either sparse binary (sorted active
// column lists, CSR style, implicit value 1) or dense row-major reals.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;

  // Each row lists active columns; duplicates and order are normalized.
  static FeatureMatrix binary(FeatureKind kind, std::size_t cols,
                              std::vector<std::vector<std::uint32_t>> rows);
  static FeatureMatrix dense(FeatureKind kind, std::size_t cols,
                             std::vector<double> row_major);
  static FeatureMatrix dense(FeatureKind kind,
                             const std::vector<std::vector<double>>& rows);

  FeatureKind kind() const { return kind_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_sparse() const { return sparse_; }

  // Sparse storage only.
  std::span<const std::uint32_t> active(std::size_t row) const {
    return {indices_.data() + offsets_[row], offsets_[row + 1] - offsets_[row]};
  }
  // Dense storage only.
  std::span<const double> dense_row(std::size_t row) const {
    return {values_.data() + row * cols_, cols_};
  }

  double at(std::size_t row, std::size_t col) const;
  double dot(std::size_t row, std::span<const double> weights) const;
  double squared_norm(std::size_t row) const;
  double dot_rows(std::size_t row, const FeatureMatrix& other,
                  std::size_t other_row) const;

  // Calls f(col, value) for every nonzero entry of row, in column order.
  template <typename F>
  void for_each_nonzero(std::size_t row, F&& f) const {
    if (sparse_) {
      for (std::uint32_t col : active(row)) f(static_cast<std::size_t>(col), 1.0);
    } else {
      auto values = dense_row(row);
      for (std::size_t col = 0; col < cols_; ++col) {
        if (values[col] != 0.0) f(col, values[col]);
      }
    }
  }

  // True when every entry is 0 or 1.
  bool is_binary() const;

  // Sparse binary copy with entry 1 where value > threshold.
  FeatureMatrix binarized(double threshold) const;

  FeatureMatrix select_rows(std::span<const std::size_t> rows) const;

  std::vector<double> to_dense() const;

  bool operator==(const FeatureMatrix&) const = default;

 private:
  FeatureKind kind_ = FeatureKind::kBow;
  bool sparse_ = true;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::uint32_t> indices_;
  std::vector<double> values_;
};

}  // namespace phirisk

#endif  // PHIRISK_FEATURE_MATRIX_H_
