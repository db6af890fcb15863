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
#include <numeric>

#include "phirisk/error.h"
#include "phirisk/models.h"
#include "phirisk/rng.h"

namespace phirisk {
namespace {

void add_scaled_row(const FeatureMatrix& x, std::size_t row, double scale,
                    std::vector<double>& w) {
  x.for_each_nonzero(row, [&](std::size_t col, double v) { w[col] += scale * v; });
}

}  // namespace

double linear_svm_objective(std::span<const double> weights, double bias,
                            const FeatureMatrix& x, std::span<const int> y, double c) {
  double regularizer = bias * bias;
  for (double w : weights) regularizer += w * w;
  double loss = 0.0;
  for (std::size_t r = 0; r < x.rows(); ++r) {
    double sign = y[r] == 1 ? 1.0 : -1.0;
    double slack = std::max(0.0, 1.0 - sign * (x.dot(r, weights) + bias));
    loss += slack * slack;
  }
  return 0.5 * regularizer + c * loss;
}

// Dual coordinate descent for the squared hinge loss. With the bias folded
// in as a constant feature, the dual is
//   min_a 0.5 a'(Q + D)a - sum(a),  a >= 0,  Q_ij = y_i y_j (x_i.x_j + 1),
// with D = I / (2C). Each step minimizes exactly over one a_i, so the dual
// objective never increases.
LinearSvmModel train_linear_svm(const FeatureMatrix& x, std::span<const int> y,
                                const LinearSvmParams& params) {
  check_training_input(x, y);
  if (!(params.c > 0.0)) throw Error(ErrorCode::kInvalidConfig, "C must be positive");
  const std::size_t n = x.rows();
  const double diag = 0.5 / params.c;

  std::vector<double> sign(n);
  std::vector<double> qd(n);
  for (std::size_t i = 0; i < n; ++i) {
    sign[i] = y[i] == 1 ? 1.0 : -1.0;
    qd[i] = x.squared_norm(i) + 1.0 + diag;
  }

  LinearSvmModel model;
  model.input = {x.kind(), x.cols()};
  model.params = params;
  model.weights.assign(x.cols(), 0.0);
  std::vector<double> alpha(n, 0.0);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);

  for (int epoch = 0; epoch < params.max_epochs; ++epoch) {
    Rng rng(derive_seed(params.seed, "lsvm-order", static_cast<std::uint64_t>(epoch)));
    rng.shuffle(std::span<std::size_t>(order));
    double max_violation = 0.0;
    for (std::size_t i : order) {
      double g = sign[i] * (x.dot(i, model.weights) + model.bias) - 1.0 + diag * alpha[i];
      double pg = alpha[i] == 0.0 ? std::min(g, 0.0) : g;
      max_violation = std::max(max_violation, std::abs(pg));
      if (pg == 0.0) continue;
      double updated = std::max(alpha[i] - g / qd[i], 0.0);
      double delta = (updated - alpha[i]) * sign[i];
      alpha[i] = updated;
      add_scaled_row(x, i, delta, model.weights);
      model.bias += delta;
    }
    model.epochs = epoch + 1;

    double dual = 0.5 * model.bias * model.bias;
    for (double w : model.weights) dual += 0.5 * w * w;
    for (double a : alpha) dual += 0.5 * diag * a * a - a;
    model.dual_objective.push_back(dual);

    if (max_violation < params.tolerance) {
      model.converged = true;
      break;
    }
  }
  return model;
}

std::vector<double> LinearSvmModel::decision_scores(const FeatureMatrix& x) const {
  check_prediction_input(input, x);
  std::vector<double> scores(x.rows());
  for (std::size_t r = 0; r < x.rows(); ++r) scores[r] = x.dot(r, weights) + bias;
  return scores;
}

}  // namespace phirisk
