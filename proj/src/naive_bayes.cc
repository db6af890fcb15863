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
#include <numbers>

#include "phirisk/error.h"
#include "phirisk/models.h"

namespace phirisk {
namespace {

std::array<double, 2> normalize_log(const std::array<double, 2>& jll) {
  double top = std::max(jll[0], jll[1]);
  double norm = top + std::log(std::exp(jll[0] - top) + std::exp(jll[1] - top));
  return {std::exp(jll[0] - norm), std::exp(jll[1] - norm)};
}

std::array<double, 2> class_log_priors(std::span<const int> y) {
  double high = static_cast<double>(std::count(y.begin(), y.end(), 1));
  double n = static_cast<double>(y.size());
  return {std::log((n - high) / n), std::log(high / n)};
}

}  // namespace

BernoulliNbModel train_bernoulli_nb(const FeatureMatrix& x, std::span<const int> y,
                                    const BernoulliNbParams& params) {
  check_training_input(x, y);
  if (params.alpha < 0.0) throw Error(ErrorCode::kInvalidConfig, "alpha must be >= 0");
  // alpha = 0 would put log(0) into the tables.
  const double alpha = std::max(params.alpha, 1e-10);
  FeatureMatrix binarized;
  const FeatureMatrix* input = &x;
  if (params.binarize_at) {
    binarized = x.binarized(*params.binarize_at);
    input = &binarized;
  } else if (!x.is_binary()) {
    throw Error(ErrorCode::kKindMismatch,
                "Bernoulli naive Bayes needs binary features; set binarize_at");
  }

  const std::size_t d = x.cols();
  std::array<std::vector<double>, 2> present{std::vector<double>(d, 0.0),
                                             std::vector<double>(d, 0.0)};
  std::array<double, 2> class_count{};
  for (std::size_t r = 0; r < input->rows(); ++r) {
    int c = y[r];
    class_count[c] += 1.0;
    input->for_each_nonzero(r, [&](std::size_t col, double) { present[c][col] += 1.0; });
  }

  BernoulliNbModel model;
  model.input = {x.kind(), d};
  model.params = params;
  model.log_prior = class_log_priors(y);
  for (int c = 0; c < 2; ++c) {
    model.log_present[c].resize(d);
    model.log_absent[c].resize(d);
    double denominator = class_count[c] + 2.0 * alpha;
    for (std::size_t j = 0; j < d; ++j) {
      double p = (present[c][j] + alpha) / denominator;
      model.log_present[c][j] = std::log(p);
      model.log_absent[c][j] = std::log1p(-p);
    }
  }
  return model;
}

std::vector<std::array<double, 2>> BernoulliNbModel::joint_log_likelihood(
    const FeatureMatrix& x) const {
  check_prediction_input(input, x);
  FeatureMatrix binarized;
  const FeatureMatrix* rows = &x;
  if (params.binarize_at) {
    binarized = x.binarized(*params.binarize_at);
    rows = &binarized;
  } else if (!x.is_binary()) {
    throw Error(ErrorCode::kKindMismatch, "Bernoulli naive Bayes needs binary features");
  }
  // Start every row from the all-absent likelihood and correct active columns.
  std::array<double, 2> base{};
  for (int c = 0; c < 2; ++c) {
    base[c] = log_prior[c];
    for (double v : log_absent[c]) base[c] += v;
  }
  std::vector<std::array<double, 2>> out(rows->rows());
  for (std::size_t r = 0; r < rows->rows(); ++r) {
    std::array<double, 2> jll = base;
    rows->for_each_nonzero(r, [&](std::size_t col, double) {
      for (int c = 0; c < 2; ++c) jll[c] += log_present[c][col] - log_absent[c][col];
    });
    out[r] = jll;
  }
  return out;
}

std::vector<std::array<double, 2>> BernoulliNbModel::posteriors(const FeatureMatrix& x) const {
  auto jll = joint_log_likelihood(x);
  for (auto& row : jll) row = normalize_log(row);
  return jll;
}

std::vector<double> BernoulliNbModel::decision_scores(const FeatureMatrix& x) const {
  auto jll = joint_log_likelihood(x);
  std::vector<double> scores(jll.size());
  for (std::size_t r = 0; r < jll.size(); ++r) scores[r] = jll[r][1] - jll[r][0];
  return scores;
}

GaussianNbModel train_gaussian_nb(const FeatureMatrix& x, std::span<const int> y,
                                  const GaussianNbParams& params) {
  check_training_input(x, y);
  const std::size_t d = x.cols();
  const std::size_t n = x.rows();

  // Two passes over nonzeros; implicit zeros are folded in per feature.
  auto moments = [&](auto&& include, double count, std::vector<double>& mean,
                     std::vector<double>& variance) {
    std::vector<double> sum(d, 0.0);
    std::vector<double> nonzeros(d, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      if (!include(r)) continue;
      x.for_each_nonzero(r, [&](std::size_t col, double v) {
        sum[col] += v;
        nonzeros[col] += 1.0;
      });
    }
    mean.assign(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) mean[j] = sum[j] / count;
    std::vector<double> squares(d, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      if (!include(r)) continue;
      x.for_each_nonzero(r, [&](std::size_t col, double v) {
        double diff = v - mean[col];
        squares[col] += diff * diff;
      });
    }
    variance.assign(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
      variance[j] = (squares[j] + (count - nonzeros[j]) * mean[j] * mean[j]) / count;
    }
  };

  std::vector<double> overall_mean;
  std::vector<double> overall_variance;
  moments([](std::size_t) { return true; }, static_cast<double>(n), overall_mean,
          overall_variance);
  double largest = 0.0;
  for (double v : overall_variance) largest = std::max(largest, v);

  GaussianNbModel model;
  model.input = {x.kind(), d};
  model.params = params;
  model.epsilon = largest > 0.0 ? params.var_smoothing * largest : params.var_smoothing;
  model.log_prior = class_log_priors(y);
  for (int c = 0; c < 2; ++c) {
    double count = static_cast<double>(std::count(y.begin(), y.end(), c));
    moments([&](std::size_t r) { return y[r] == c; }, count, model.mean[c],
            model.variance[c]);
    for (double& v : model.variance[c]) v += model.epsilon;
  }
  return model;
}

std::vector<std::array<double, 2>> GaussianNbModel::joint_log_likelihood(
    const FeatureMatrix& x) const {
  check_prediction_input(input, x);
  const std::size_t d = input.width;
  std::array<double, 2> log_norm{};
  for (int c = 0; c < 2; ++c) {
    double sum = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      sum += std::log(2.0 * std::numbers::pi * variance[c][j]);
    }
    log_norm[c] = log_prior[c] - 0.5 * sum;
  }
  if (!x.is_sparse()) {
    std::vector<std::array<double, 2>> out(x.rows());
    for (std::size_t r = 0; r < x.rows(); ++r) {
      auto row = x.dense_row(r);
      for (int c = 0; c < 2; ++c) {
        double sum = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
          double diff = row[j] - mean[c][j];
          sum += diff * diff / variance[c][j];
        }
        out[r][c] = log_norm[c] - 0.5 * sum;
      }
    }
    return out;
  }
  // Sparse rows: likelihood of an all-zero row, corrected per active entry.
  std::array<double, 2> base{};
  for (int c = 0; c < 2; ++c) {
    double sum = 0.0;
    for (std::size_t j = 0; j < d; ++j) sum += mean[c][j] * mean[c][j] / variance[c][j];
    base[c] = log_norm[c] - 0.5 * sum;
  }
  std::vector<std::array<double, 2>> out(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    std::array<double, 2> jll = base;
    x.for_each_nonzero(r, [&](std::size_t col, double v) {
      for (int c = 0; c < 2; ++c) {
        double mu = mean[c][col];
        double diff = v - mu;
        jll[c] -= 0.5 * (diff * diff - mu * mu) / variance[c][col];
      }
    });
    out[r] = jll;
  }
  return out;
}

std::vector<std::array<double, 2>> GaussianNbModel::posteriors(const FeatureMatrix& x) const {
  auto jll = joint_log_likelihood(x);
  for (auto& row : jll) row = normalize_log(row);
  return jll;
}

std::vector<double> GaussianNbModel::decision_scores(const FeatureMatrix& x) const {
  auto jll = joint_log_likelihood(x);
  std::vector<double> scores(jll.size());
  for (std::size_t r = 0; r < jll.size(); ++r) scores[r] = jll[r][1] - jll[r][0];
  return scores;
}

}  // namespace phirisk
