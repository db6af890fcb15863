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
#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.h"
#include "phirisk/models.h"
#include "test_support.h"

using namespace phirisk;

namespace {

FeatureMatrix dense(const oracle::Matrix& rows) {
  return FeatureMatrix::dense(FeatureKind::kEmbedding, rows);
}

struct Dataset {
  oracle::Matrix x;
  std::vector<int> y;
};

// Two overlapping Gaussian clouds in the plane.
Dataset blobs(std::uint64_t seed, std::size_t n, double separation) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Dataset data;
  for (std::size_t i = 0; i < n; ++i) {
    int label = static_cast<int>(i % 2);
    double shift = label == 1 ? separation : -separation;
    data.x.push_back({shift + normal(rng), 0.5 * shift + normal(rng)});
    data.y.push_back(label);
  }
  return data;
}

}  // namespace

TEST_SUITE("svm") {

TEST_CASE("two points on a line") {
  auto model = train_linear_svm(dense({{-1}, {1}}), std::vector<int>{0, 1});
  CHECK(model.weights[0] > 0);
  CHECK(predict(TrainedModel(model), dense({{-1}, {1}})) == std::vector<int>{0, 1});
  CHECK(model.converged);
}

TEST_CASE("linear svm reaches the primal optimum") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    Dataset data = blobs(seed, 20, 1.0);
    auto model = train_linear_svm(dense(data.x), data.y);
    double got = linear_svm_objective(model.weights, model.bias, dense(data.x), data.y, 1.0);
    CHECK(got == doctest::Approx(oracle::squared_hinge_objective(model.weights, model.bias,
                                                                 data.x, data.y, 1.0))
                     .epsilon(1e-12));
    auto best = oracle::primal_gradient_descent(data.x, data.y, 1.0, 200000);
    CHECK(std::abs(got - best.objective) <= 1e-3 * best.objective);
    CHECK(model.converged);

    // Dual objective never increases from one epoch to the next.
    for (std::size_t e = 1; e < model.dual_objective.size(); ++e) {
      CHECK(model.dual_objective[e] <= model.dual_objective[e - 1] + 1e-12);
    }

    // Local optimality probe.
    for (std::size_t j = 0; j <= model.weights.size(); ++j) {
      for (double step : {-1e-3, 1e-3}) {
        auto w = model.weights;
        double b = model.bias;
        (j < w.size() ? w[j] : b) += step;
        double probe = linear_svm_objective(w, b, dense(data.x), data.y, 1.0);
        CHECK(probe >= got - model.params.tolerance);
      }
    }
  }
}

TEST_CASE("linear svm is seed deterministic and handles sparse input") {
  Dataset data = blobs(4, 30, 0.8);
  auto a = train_linear_svm(dense(data.x), data.y, {.seed = 3});
  auto b = train_linear_svm(dense(data.x), data.y, {.seed = 3});
  CHECK(a == b);
  auto sparse = FeatureMatrix::binary(FeatureKind::kBow, 3, {{0}, {1}, {0, 2}, {1, 2}});
  auto model = train_linear_svm(sparse, std::vector<int>{1, 0, 1, 0});
  CHECK(predict(TrainedModel(model), sparse) == std::vector<int>{1, 0, 1, 0});
}

TEST_CASE("rbf svm separates xor") {
  oracle::Matrix x = {{0, 0}, {1, 1}, {0, 1}, {1, 0}};
  std::vector<int> y = {0, 0, 1, 1};
  auto model = train_kernel_svm(dense(x), y);
  CHECK(predict(TrainedModel(model), dense(x)) == y);
  CHECK(model.gamma == doctest::Approx(scale_gamma(dense(x))));
  // Total variance is 0.25 + 0.25.
  CHECK(scale_gamma(dense(x)) == doctest::Approx(2.0));
}

TEST_CASE("rbf svm agrees with a dense dual solver") {
  struct Case {
    std::uint64_t seed;
    std::size_t n;
    double c;
    double gamma;
  };
  for (const Case& k : {Case{5, 10, 1.0, 0.5}, Case{6, 20, 1.0, 0.7}, Case{7, 20, 3.0, 0.3}}) {
    Dataset data = blobs(k.seed, k.n, 0.7);
    auto model = train_kernel_svm(dense(data.x), data.y, {.c = k.c, .gamma = k.gamma});
    auto reference = oracle::dense_dual(data.x, data.y, k.c, k.gamma, 200000);
    auto scores = model.decision_scores(dense(data.x));
    oracle::Matrix grid;
    for (double a = -3; a <= 3; a += 1.5) {
      for (double b = -3; b <= 3; b += 1.5) grid.push_back({a, b});
    }
    auto grid_scores = model.decision_scores(dense(grid));
    for (std::size_t i = 0; i < data.x.size(); ++i) {
      CHECK(std::abs(scores[i] - oracle::dual_decision(reference, data.x, data.y, k.gamma,
                                                       data.x[i])) < 1e-3);
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(std::abs(grid_scores[i] - oracle::dual_decision(reference, data.x, data.y, k.gamma,
                                                            grid[i])) < 1e-3);
    }

    // Dual feasibility.
    double balance = 0;
    for (std::size_t s = 0; s < model.dual_coef.size(); ++s) {
      double alpha = std::abs(model.dual_coef[s]);
      CHECK(alpha > 0);
      CHECK(alpha <= k.c + 1e-12);
      double sign = data.y[model.support_indices[s]] == 1 ? 1 : -1;
      CHECK(model.dual_coef[s] * sign > 0);
      balance += model.dual_coef[s];
    }
    CHECK(std::abs(balance) < 1e-6);

    // Points outside the support sit on or beyond the margin.
    std::vector<bool> is_support(data.x.size(), false);
    for (std::size_t idx : model.support_indices) is_support[idx] = true;
    for (std::size_t i = 0; i < data.x.size(); ++i) {
      if (is_support[i]) continue;
      double sign = data.y[i] == 1 ? 1 : -1;
      CHECK(sign * scores[i] >= 1 - 1e-3);
    }
    CHECK(model.converged);
  }
}

TEST_CASE("rbf svm on sparse binary input") {
  auto x = FeatureMatrix::binary(FeatureKind::kBow, 4,
                                 {{0, 1}, {0}, {1}, {2, 3}, {3}, {2}, {0, 3}, {1, 2}});
  std::vector<int> y = {1, 1, 1, 0, 0, 0, 1, 0};
  auto model = train_kernel_svm(x, y);
  auto labels = predict(TrainedModel(model), x);
  CHECK(labels.size() == 8);
  auto dense_model = train_kernel_svm(FeatureMatrix::dense(FeatureKind::kBow, 4, x.to_dense()), y);
  auto a = model.decision_scores(x);
  auto b = dense_model.decision_scores(FeatureMatrix::dense(FeatureKind::kBow, 4, x.to_dense()));
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-9));
}

TEST_CASE("iteration cap reports non-convergence") {
  Dataset data = blobs(8, 40, 0.2);
  auto model = train_kernel_svm(dense(data.x), data.y, {.max_iterations = 2});
  CHECK_FALSE(model.converged);
  CHECK_FALSE(training_warnings(TrainedModel(model)).empty());
  auto linear = train_linear_svm(dense(data.x), data.y, {.max_epochs = 1});
  CHECK_FALSE(linear.converged);
  CHECK_FALSE(training_warnings(TrainedModel(linear)).empty());
}

}  // TEST_SUITE
