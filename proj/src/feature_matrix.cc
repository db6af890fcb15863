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
#include "phirisk/feature_matrix.h"

#include <algorithm>

#include "phirisk/error.h"

namespace phirisk {

std::string_view feature_kind_name(FeatureKind kind) {
  return kind == FeatureKind::kBow ? "bow" : "w2v";
}

std::optional<FeatureKind> parse_feature_kind(std::string_view name) {
  if (name == "bow") return FeatureKind::kBow;
  if (name == "w2v" || name == "emb") return FeatureKind::kEmbedding;
  return std::nullopt;
}

FeatureMatrix FeatureMatrix::binary(FeatureKind kind, std::size_t cols,
                                    std::vector<std::vector<std::uint32_t>> rows) {
  FeatureMatrix m;
  m.kind_ = kind;
  m.sparse_ = true;
  m.rows_ = rows.size();
  m.cols_ = cols;
  m.offsets_.reserve(rows.size() + 1);
  for (auto& row : rows) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    if (!row.empty() && row.back() >= cols) {
      throw Error(ErrorCode::kDimensionMismatch, "column index out of range");
    }
    m.indices_.insert(m.indices_.end(), row.begin(), row.end());
    m.offsets_.push_back(m.indices_.size());
  }
  return m;
}

FeatureMatrix FeatureMatrix::dense(FeatureKind kind, std::size_t cols,
                                   std::vector<double> row_major) {
  if (cols == 0 ? !row_major.empty() : row_major.size() % cols != 0) {
    throw Error(ErrorCode::kDimensionMismatch, "dense values do not fill whole rows");
  }
  FeatureMatrix m;
  m.kind_ = kind;
  m.sparse_ = false;
  m.cols_ = cols;
  m.rows_ = cols == 0 ? 0 : row_major.size() / cols;
  m.values_ = std::move(row_major);
  return m;
}

FeatureMatrix FeatureMatrix::dense(FeatureKind kind,
                                   const std::vector<std::vector<double>>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  std::vector<double> values;
  values.reserve(rows.size() * cols);
  for (const auto& row : rows) {
    if (row.size() != cols) {
      throw Error(ErrorCode::kDimensionMismatch, "ragged dense rows");
    }
    values.insert(values.end(), row.begin(), row.end());
  }
  FeatureMatrix m = dense(kind, cols, std::move(values));
  m.rows_ = rows.size();
  return m;
}

double FeatureMatrix::at(std::size_t row, std::size_t col) const {
  if (!sparse_) return values_[row * cols_ + col];
  auto cols = active(row);
  return std::binary_search(cols.begin(), cols.end(), static_cast<std::uint32_t>(col))
             ? 1.0
             : 0.0;
}

double FeatureMatrix::dot(std::size_t row, std::span<const double> weights) const {
  double sum = 0.0;
  if (sparse_) {
    for (std::uint32_t col : active(row)) sum += weights[col];
  } else {
    auto values = dense_row(row);
    for (std::size_t col = 0; col < cols_; ++col) sum += values[col] * weights[col];
  }
  return sum;
}

double FeatureMatrix::squared_norm(std::size_t row) const {
  if (sparse_) return static_cast<double>(offsets_[row + 1] - offsets_[row]);
  double sum = 0.0;
  for (double v : dense_row(row)) sum += v * v;
  return sum;
}

double FeatureMatrix::dot_rows(std::size_t row, const FeatureMatrix& other,
                               std::size_t other_row) const {
  if (sparse_ && other.sparse_) {
    auto a = active(row);
    auto b = other.active(other_row);
    double sum = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i] < b[j]) {
        ++i;
      } else if (b[j] < a[i]) {
        ++j;
      } else {
        sum += 1.0;
        ++i;
        ++j;
      }
    }
    return sum;
  }
  if (!other.sparse_) return dot(row, other.dense_row(other_row));
  return other.dot(other_row, dense_row(row));
}

bool FeatureMatrix::is_binary() const {
  if (sparse_) return true;
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return v == 0.0 || v == 1.0; });
}

FeatureMatrix FeatureMatrix::binarized(double threshold) const {
  if (sparse_ && threshold >= 0.0 && threshold < 1.0) return *this;
  std::vector<std::vector<std::uint32_t>> rows(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    if (sparse_) {
      for (std::size_t c = 0; c < cols_; ++c) {
        if (at(r, c) > threshold) rows[r].push_back(static_cast<std::uint32_t>(c));
      }
    } else {
      auto values = dense_row(r);
      for (std::size_t c = 0; c < cols_; ++c) {
        if (values[c] > threshold) rows[r].push_back(static_cast<std::uint32_t>(c));
      }
    }
  }
  return binary(kind_, cols_, std::move(rows));
}

FeatureMatrix FeatureMatrix::select_rows(std::span<const std::size_t> rows) const {
  FeatureMatrix m;
  m.kind_ = kind_;
  m.sparse_ = sparse_;
  m.cols_ = cols_;
  m.rows_ = rows.size();
  if (sparse_) {
    m.offsets_.reserve(rows.size() + 1);
    for (std::size_t r : rows) {
      auto cols = active(r);
      m.indices_.insert(m.indices_.end(), cols.begin(), cols.end());
      m.offsets_.push_back(m.indices_.size());
    }
  } else {
    m.values_.reserve(rows.size() * cols_);
    for (std::size_t r : rows) {
      auto values = dense_row(r);
      m.values_.insert(m.values_.end(), values.begin(), values.end());
    }
  }
  return m;
}

std::vector<double> FeatureMatrix::to_dense() const {
  if (!sparse_) return values_;
  std::vector<double> out(rows_ * cols_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::uint32_t c : active(r)) out[r * cols_ + c] = 1.0;
  }
  return out;
}

}  // namespace phirisk
