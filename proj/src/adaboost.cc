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
#include <algorithm>
#include <cmath>

#include "phirisk/error.h"
#include "phirisk/models.h"

namespace phirisk {
namespace {

struct Entry {
  double value;
  std::size_t row;
};

// Nonzero entries of every column sorted by value; zeros stay implicit.
class ColumnIndex {
 public:
  explicit ColumnIndex(const FeatureMatrix& x) : rows_(x.rows()), columns_(x.cols()) {
    for (std::size_t r = 0; r < x.rows(); ++r) {
      x.for_each_nonzero(r, [&](std::size_t col, double v) { columns_[col].push_back({v, r}); });
    }
    for (auto& column : columns_) {
      std::stable_sort(column.begin(), column.end(),
                       [](const Entry& a, const Entry& b) { return a.value < b.value; });
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  const std::vector<Entry>& column(std::size_t j) const { return columns_[j]; }

 private:
  std::size_t rows_;
  std::vector<std::vector<Entry>> columns_;
};

// Errors closer than this count as tied; the earlier candidate (lower
// feature, lower threshold, +1 polarity) wins.
constexpr double kTieTolerance = 1e-12;

struct Candidate {
  Stump stump;
  double error = 2.0;
};

// Sweeps one column's distinct values in ascending order. For a threshold t
// the +1-polarity stump errs on positives with x <= t and negatives with
// x > t.
void scan_column(const ColumnIndex& index, std::size_t j, std::span<const int> y,
                 std::span<const double> w, double total_pos, double total_neg,
                 Candidate& best) {
  const auto& entries = index.column(j);
  const std::size_t zeros = index.rows() - entries.size();
  double nonzero_pos = 0.0;
  double nonzero_neg = 0.0;
  for (const Entry& e : entries) {
    (y[e.row] == 1 ? nonzero_pos : nonzero_neg) += w[e.row];
  }
  const double zero_pos = std::max(0.0, total_pos - nonzero_pos);
  const double zero_neg = std::max(0.0, total_neg - nonzero_neg);

  double left_pos = 0.0;
  double left_neg = 0.0;
  bool have_previous = false;
  double previous = 0.0;
  auto consider = [&](double next_value) {
    double threshold = previous + (next_value - previous) / 2.0;
    double error_pos = left_pos + (total_neg - left_neg);
    double error_neg = left_neg + (total_pos - left_pos);
    if (error_pos < best.error - kTieTolerance) best = {{j, threshold, 1}, error_pos};
    if (error_neg < best.error - kTieTolerance) best = {{j, threshold, -1}, error_neg};
  };
  // Emits the group of equal values [value, pos, neg] in ascending order.
  auto add_group = [&](double value, double pos, double neg) {
    if (have_previous) consider(value);
    left_pos += pos;
    left_neg += neg;
    previous = value;
    have_previous = true;
  };

  std::size_t i = 0;
  bool zero_done = zeros == 0;
  while (i < entries.size() || !zero_done) {
    if (!zero_done && (i == entries.size() || entries[i].value > 0.0)) {
      add_group(0.0, zero_pos, zero_neg);
      zero_done = true;
      continue;
    }
    double value = entries[i].value;
    double pos = 0.0;
    double neg = 0.0;
    while (i < entries.size() && entries[i].value == value) {
      (y[entries[i].row] == 1 ? pos : neg) += w[entries[i].row];
      ++i;
    }
    add_group(value, pos, neg);
  }
}

Candidate search(const ColumnIndex& index, std::span<const int> y,
                 std::span<const double> w) {
  double total_pos = 0.0;
  double total_neg = 0.0;
  for (std::size_t r = 0; r < y.size(); ++r) (y[r] == 1 ? total_pos : total_neg) += w[r];
  Candidate best;
  for (std::size_t j = 0; j < index.cols(); ++j) {
    scan_column(index, j, y, w, total_pos, total_neg, best);
  }
  return best;
}

}  // namespace

std::optional<std::pair<Stump, double>> best_stump(const FeatureMatrix& x,
                                                   std::span<const int> y,
                                                   std::span<const double> weights) {
  check_training_input(x, y);
  ColumnIndex index(x);
  Candidate best = search(index, y, weights);
  if (best.error > 1.0 + 1e-9) return std::nullopt;
  return std::make_pair(best.stump, best.error);
}

AdaBoostModel train_adaboost(const FeatureMatrix& x, std::span<const int> y,
                             const AdaBoostParams& params) {
  check_training_input(x, y);
  if (params.rounds < 1 || !(params.learning_rate > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "AdaBoost needs rounds >= 1 and learning_rate > 0");
  }
  const std::size_t n = x.rows();
  ColumnIndex index(x);
  std::vector<double> w(n, 1.0 / static_cast<double>(n));

  AdaBoostModel model;
  model.input = {x.kind(), x.cols()};
  model.params = params;
  std::vector<char> wrong(n);
  for (int round = 0; round < params.rounds; ++round) {
    Candidate best = search(index, y, w);
    if (best.error > 1.0) break;  // no feature varies

    // Recount the error directly so a perfect stump reads exactly zero.
    double error = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      int truth = y[r] == 1 ? 1 : -1;
      wrong[r] = best.stump.vote(x.at(r, best.stump.feature)) != truth;
      if (wrong[r]) error += w[r];
    }
    if (error >= 0.5) break;

    bool perfect = error < kAdaBoostMinError;
    double clipped = std::max(error, kAdaBoostMinError);
    double alpha = params.learning_rate * std::log((1.0 - clipped) / clipped);
    model.stumps.push_back(best.stump);
    model.stage_weights.push_back(alpha);
    model.round_errors.push_back(error);

    double sum = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      if (wrong[r]) w[r] *= std::exp(alpha);
      sum += w[r];
    }
    double renormalized = 0.0;
    for (double& v : w) {
      v /= sum;
      renormalized += v;
    }
    model.weight_sums.push_back(renormalized);
    if (perfect) break;
  }
  return model;
}

std::vector<double> AdaBoostModel::decision_scores(const FeatureMatrix& x) const {
  check_prediction_input(input, x);
  std::vector<double> scores(x.rows(), 0.0);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    double sum = 0.0;
    for (std::size_t t = 0; t < stumps.size(); ++t) {
      sum += stage_weights[t] * stumps[t].vote(x.at(r, stumps[t].feature));
    }
    scores[r] = sum;
  }
  return scores;
}

}  // namespace phirisk
