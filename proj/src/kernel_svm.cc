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
#include <limits>
#include <list>
#include <memory>
#include <unordered_map>

#include "phirisk/error.h"
#include "phirisk/models.h"

namespace phirisk {
namespace {

constexpr double kTau = 1e-12;

double rbf(double gamma, double norm_a, double norm_b, double dot) {
  return std::exp(-gamma * std::max(0.0, norm_a + norm_b - 2.0 * dot));
}

// LRU cache of kernel matrix columns.
class KernelColumns {
 public:
  using Column = std::shared_ptr<const std::vector<double>>;

  KernelColumns(const FeatureMatrix& x, double gamma, std::size_t cache_mb)
      : x_(x), gamma_(gamma), norms_(x.rows()) {
    for (std::size_t i = 0; i < x.rows(); ++i) norms_[i] = x.squared_norm(i);
    std::size_t bytes_per_column = std::max<std::size_t>(1, x.rows()) * sizeof(double);
    capacity_ = std::max<std::size_t>(2, cache_mb * (std::size_t{1} << 20) / bytes_per_column);
  }

  Column get(std::size_t i) {
    auto it = slots_.find(i);
    if (it != slots_.end()) {
      order_.splice(order_.begin(), order_, it->second);
      return it->second->second;
    }
    auto column = std::make_shared<std::vector<double>>(x_.rows());
    for (std::size_t k = 0; k < x_.rows(); ++k) {
      (*column)[k] = k == i ? 1.0 : rbf(gamma_, norms_[i], norms_[k], x_.dot_rows(i, x_, k));
    }
    order_.emplace_front(i, column);
    slots_[i] = order_.begin();
    if (order_.size() > capacity_) {
      slots_.erase(order_.back().first);
      order_.pop_back();
    }
    return column;
  }

 private:
  const FeatureMatrix& x_;
  double gamma_;
  std::vector<double> norms_;
  std::size_t capacity_;
  std::list<std::pair<std::size_t, Column>> order_;
  std::unordered_map<std::size_t, std::list<std::pair<std::size_t, Column>>::iterator> slots_;
};

}  // namespace

double scale_gamma(const FeatureMatrix& x) {
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  if (n == 0 || d == 0) return 1.0;
  std::vector<double> mean(d, 0.0);
  std::vector<double> nonzeros(d, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    x.for_each_nonzero(r, [&](std::size_t col, double v) {
      mean[col] += v;
      nonzeros[col] += 1.0;
    });
  }
  for (double& m : mean) m /= static_cast<double>(n);
  std::vector<double> squares(d, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    x.for_each_nonzero(r, [&](std::size_t col, double v) {
      double diff = v - mean[col];
      squares[col] += diff * diff;
    });
  }
  double total = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    double zeros = static_cast<double>(n) - nonzeros[j];
    total += (squares[j] + zeros * mean[j] * mean[j]) / static_cast<double>(n);
  }
  // d * (total / d)
  return total > 0.0 ? 1.0 / total : 1.0;
}

// Solves min 0.5 a'Qa - sum(a) s.t. 0 <= a <= C, y'a = 0 with
// Q_ij = y_i y_j k(x_i, x_j), choosing the maximal-violating i and the j with
// the largest second-order decrease each step. Stops when the gap between
// the largest and smallest feasible -y_t G_t is below the tolerance.
KernelSvmModel train_kernel_svm(const FeatureMatrix& x, std::span<const int> y,
                                const KernelSvmParams& params) {
  check_training_input(x, y);
  if (!(params.c > 0.0)) throw Error(ErrorCode::kInvalidConfig, "C must be positive");
  if (params.gamma && !(*params.gamma > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "gamma must be positive");
  }
  const std::size_t n = x.rows();
  const double c = params.c;

  KernelSvmModel model;
  model.input = {x.kind(), x.cols()};
  model.params = params;
  model.gamma = params.gamma.value_or(scale_gamma(x));

  KernelColumns columns(x, model.gamma, params.cache_mb);
  std::vector<double> sign(n);
  for (std::size_t i = 0; i < n; ++i) sign[i] = y[i] == 1 ? 1.0 : -1.0;
  std::vector<double> alpha(n, 0.0);
  std::vector<double> grad(n, -1.0);

  const std::size_t max_iterations = params.max_iterations.value_or(10 * n * n);
  auto in_up = [&](std::size_t t) { return sign[t] > 0 ? alpha[t] < c : alpha[t] > 0.0; };
  auto in_low = [&](std::size_t t) { return sign[t] > 0 ? alpha[t] > 0.0 : alpha[t] < c; };

  std::size_t iteration = 0;
  for (;; ++iteration) {
    // Working set selection.
    double gmax = -std::numeric_limits<double>::infinity();
    std::size_t i = n;
    for (std::size_t t = 0; t < n; ++t) {
      if (in_up(t) && -sign[t] * grad[t] >= gmax) {
        gmax = -sign[t] * grad[t];
        i = t;
      }
    }
    double gmax2 = -std::numeric_limits<double>::infinity();
    std::size_t j = n;
    double best_decrease = std::numeric_limits<double>::infinity();
    KernelColumns::Column ki;
    if (i < n) ki = columns.get(i);
    for (std::size_t t = 0; t < n && i < n; ++t) {
      if (!in_low(t)) continue;
      double score = sign[t] * grad[t];
      gmax2 = std::max(gmax2, score);
      double grad_diff = gmax + score;
      if (grad_diff > 0.0) {
        double quad = 2.0 - 2.0 * (*ki)[t];  // k(x, x) = 1 for RBF
        double decrease = -(grad_diff * grad_diff) / (quad > 0.0 ? quad : kTau);
        if (decrease <= best_decrease) {
          best_decrease = decrease;
          j = t;
        }
      }
    }
    if (i == n || j == n || gmax + gmax2 < params.tolerance) {
      model.converged = true;
      break;
    }
    if (iteration >= max_iterations) break;

    auto kj = columns.get(j);
    double kij = (*ki)[j];
    double old_i = alpha[i];
    double old_j = alpha[j];
    double quad = std::max(2.0 - 2.0 * kij, kTau);
    if (sign[i] != sign[j]) {
      double delta = (-grad[i] - grad[j]) / quad;
      double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = -diff;
      }
      if (diff > 0.0) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = c - diff;
        }
      } else if (alpha[j] > c) {
        alpha[j] = c;
        alpha[i] = c + diff;
      }
    } else {
      double delta = (grad[i] - grad[j]) / quad;
      double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > c) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = sum - c;
        }
      } else if (alpha[j] < 0.0) {
        alpha[j] = 0.0;
        alpha[i] = sum;
      }
      if (sum > c) {
        if (alpha[j] > c) {
          alpha[j] = c;
          alpha[i] = sum - c;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = sum;
      }
    }
    double di = alpha[i] - old_i;
    double dj = alpha[j] - old_j;
    for (std::size_t t = 0; t < n; ++t) {
      grad[t] += sign[t] * (sign[i] * (*ki)[t] * di + sign[j] * (*kj)[t] * dj);
    }
  }
  model.iterations = iteration;

  // Bias from the free support vectors, or the middle of the feasible
  // interval when every alpha sits at a bound.
  double upper = std::numeric_limits<double>::infinity();
  double lower = -std::numeric_limits<double>::infinity();
  double free_sum = 0.0;
  std::size_t free_count = 0;
  for (std::size_t t = 0; t < n; ++t) {
    double yg = sign[t] * grad[t];
    if (alpha[t] >= c) {
      if (sign[t] < 0) upper = std::min(upper, yg); else lower = std::max(lower, yg);
    } else if (alpha[t] <= 0.0) {
      if (sign[t] > 0) upper = std::min(upper, yg); else lower = std::max(lower, yg);
    } else {
      free_sum += yg;
      ++free_count;
    }
  }
  double rho = free_count > 0 ? free_sum / static_cast<double>(free_count)
                              : (upper + lower) / 2.0;
  model.bias = -rho;

  for (std::size_t t = 0; t < n; ++t) {
    if (alpha[t] > 0.0) {
      model.support_indices.push_back(t);
      model.dual_coef.push_back(alpha[t] * sign[t]);
    }
  }
  model.support_vectors = x.select_rows(model.support_indices);
  return model;
}

double KernelSvmModel::kernel(const FeatureMatrix& x, std::size_t row,
                              std::size_t support) const {
  return rbf(gamma, x.squared_norm(row), support_vectors.squared_norm(support),
             x.dot_rows(row, support_vectors, support));
}

std::vector<double> KernelSvmModel::decision_scores(const FeatureMatrix& x) const {
  check_prediction_input(input, x);
  std::vector<double> sv_norms(support_vectors.rows());
  for (std::size_t s = 0; s < sv_norms.size(); ++s) sv_norms[s] = support_vectors.squared_norm(s);
  std::vector<double> scores(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    double norm = x.squared_norm(r);
    double sum = bias;
    for (std::size_t s = 0; s < dual_coef.size(); ++s) {
      sum += dual_coef[s] * rbf(gamma, norm, sv_norms[s], x.dot_rows(r, support_vectors, s));
    }
    scores[r] = sum;
  }
  return scores;
}

}  // namespace phirisk
