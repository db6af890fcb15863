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

FeatureMatrix sparse(const oracle::Matrix& rows) {
  std::vector<std::vector<std::uint32_t>> active;
  for (const auto& row : rows) {
    active.emplace_back();
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] != 0) active.back().push_back(static_cast<std::uint32_t>(j));
    }
  }
  return FeatureMatrix::binary(FeatureKind::kBow, rows[0].size(), active);
}

struct Dataset {
  oracle::Matrix x;
  std::vector<int> y;
};

// Small integer-valued data so thresholds and errors are exact.
Dataset random_dataset(std::mt19937_64& rng, std::size_t n, std::size_t d) {
  Dataset data{oracle::Matrix(n, std::vector<double>(d)), std::vector<int>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    data.y[i] = i < 2 ? static_cast<int>(i) : static_cast<int>(rng() % 2);
    for (auto& v : data.x[i]) v = static_cast<double>(rng() % 5) - 2.0;
  }
  return data;
}

// XOR-like: the corners of two squares with opposite labels.
const Dataset kXor8 = {
    {{0, 0}, {1, 1}, {0, 1}, {1, 0}, {2, 2}, {3, 3}, {2, 3}, {3, 2}},
    {0, 0, 1, 1, 1, 1, 0, 0},
};

}  // namespace

TEST_SUITE("ensemble") {

TEST_CASE("first boosting round picks the exhaustive best stump") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    Dataset data = random_dataset(rng, 3 + rng() % 8, 1 + rng() % 3);
    std::vector<double> w(data.x.size());
    for (auto& v : w) v = 1.0 + static_cast<double>(rng() % 4);
    double sum = 0;
    for (double v : w) sum += v;
    for (auto& v : w) v /= sum;

    oracle::StumpChoice want = oracle::exhaustive_stump(data.x, data.y, w);
    auto got = best_stump(dense(data.x), data.y, w);
    if (!std::isfinite(want.error)) {
      CHECK_FALSE(got.has_value());
      continue;
    }
    REQUIRE(got.has_value());
    CHECK(std::abs(got->second - want.error) < 1e-12);
    oracle::StumpChoice chosen{got->first.feature, got->first.threshold, got->first.polarity, 0};
    CHECK(std::abs(oracle::stump_error(chosen, data.x, data.y, w) - want.error) < 1e-12);
  }
}

TEST_CASE("boosting matches the brute-force trace on an xor-like set") {
  AdaBoostModel model = train_adaboost(dense(kXor8.x), kXor8.y, {.rounds = 10});
  oracle::BoostTrace trace = oracle::brute_force_boost(kXor8.x, kXor8.y, 10, 1.0);
  REQUIRE(model.stumps.size() == trace.stumps.size());
  for (std::size_t t = 0; t < trace.stumps.size(); ++t) {
    CHECK(model.round_errors[t] == doctest::Approx(trace.errors[t]).epsilon(1e-9));
    CHECK(model.stage_weights[t] == doctest::Approx(trace.alphas[t]).epsilon(1e-9));
    CHECK(model.weight_sums[t] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(model.round_errors[t] < 0.5);
  }
  CHECK(predict(TrainedModel(model), dense(kXor8.x)) == oracle::boost_predict(trace, kXor8.x));
}

TEST_CASE("boosting on random sets agrees with the oracle's training predictions") {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 30; ++trial) {
    Dataset data = random_dataset(rng, 10, 2);
    AdaBoostModel model = train_adaboost(dense(data.x), data.y, {.rounds = 10});
    oracle::BoostTrace trace = oracle::brute_force_boost(data.x, data.y, 10, 1.0);
    REQUIRE(model.stumps.size() == trace.stumps.size());
    for (std::size_t t = 0; t < trace.stumps.size(); ++t) {
      CHECK(model.round_errors[t] == doctest::Approx(trace.errors[t]).epsilon(1e-9));
    }
  }
}

TEST_CASE("separable data needs one stump") {
  oracle::Matrix x = {{-3}, {-1}, {0.5}, {2}, {4}};
  std::vector<int> y = {0, 0, 1, 1, 1};
  AdaBoostModel model = train_adaboost(dense(x), y);
  REQUIRE(model.stumps.size() == 1);
  CHECK(model.round_errors[0] == 0.0);
  CHECK(model.stumps[0].threshold == -0.25);
  CHECK(std::isfinite(model.stage_weights[0]));
  CHECK(predict(TrainedModel(model), dense(x)) == y);
}

TEST_CASE("boosting on sparse and dense copies agrees") {
  std::mt19937_64 rng(77);
  oracle::Matrix x(40, std::vector<double>(12));
  std::vector<int> y(40);
  for (std::size_t i = 0; i < 40; ++i) {
    for (auto& v : x[i]) v = static_cast<double>(rng() % 3 == 0);
    y[i] = (x[i][0] + x[i][3] + x[i][7] >= 1) ? 1 : 0;
  }
  auto a = train_adaboost(sparse(x), y, {.rounds = 15});
  auto b = train_adaboost(FeatureMatrix::dense(FeatureKind::kBow, x), y, {.rounds = 15});
  CHECK(a.stumps == b.stumps);
  CHECK(a.stage_weights == b.stage_weights);
}

TEST_CASE("gini split matches exhaustive enumeration") {
  CHECK(gini_impurity(0, 0) == 0.0);
  CHECK(gini_impurity(2, 2) == 0.5);
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    Dataset data = random_dataset(rng, 2 + rng() % 9, 1 + rng() % 3);
    std::vector<std::size_t> samples(data.x.size()), features(data.x[0].size());
    std::iota(samples.begin(), samples.end(), 0);
    std::iota(features.begin(), features.end(), 0);
    oracle::SplitChoice want = oracle::exhaustive_split(data.x, data.y);
    auto got = find_best_split(dense(data.x), data.y, samples, features);
    if (!std::isfinite(want.impurity)) {
      CHECK_FALSE(got.has_value());
      continue;
    }
    REQUIRE(got.has_value());
    CHECK(std::abs(got->impurity - want.impurity) < 1e-12);
    CHECK(got->feature == want.feature);
    CHECK(got->threshold == want.threshold);
  }
}

TEST_CASE("a single unbootstrapped tree memorizes consistent data") {
  std::mt19937_64 rng(3);
  Dataset data = random_dataset(rng, 40, 4);
  // Make the labels a function of the features.
  for (std::size_t i = 0; i < data.x.size(); ++i) {
    data.y[i] = data.x[i][0] * data.x[i][1] > 0 ? 1 : 0;
  }
  auto model = train_random_forest(dense(data.x), data.y,
                                   {.trees = 1, .bootstrap = false, .max_features = 4});
  REQUIRE(model.trees.size() == 1);
  CHECK(predict(TrainedModel(model), dense(data.x)) == data.y);
}

TEST_CASE("forests are seed deterministic and order invariant") {
  std::mt19937_64 rng(9);
  oracle::Matrix x(60, std::vector<double>(9));
  std::vector<int> y(60);
  for (std::size_t i = 0; i < 60; ++i) {
    for (auto& v : x[i]) v = static_cast<double>(rng() % 2);
    y[i] = (x[i][1] + x[i][2] + x[i][5] >= 2) ? 1 : 0;
  }
  auto a = train_random_forest(sparse(x), y, {.trees = 25, .seed = 5});
  auto b = train_random_forest(sparse(x), y, {.trees = 25, .seed = 5});
  CHECK(a == b);
  CHECK(a.trees.size() == 25);
  for (const auto& tree : a.trees) {
    for (const auto& node : tree.nodes) {
      if (node.feature < 0) {
        CHECK(node.high_fraction >= 0.0);
        CHECK(node.high_fraction <= 1.0);
      }
    }
  }
  auto reversed = a;
  std::reverse(reversed.trees.begin(), reversed.trees.end());
  auto sa = a.decision_scores(sparse(x));
  auto sr = reversed.decision_scores(sparse(x));
  for (std::size_t i = 0; i < sa.size(); ++i) CHECK(sa[i] == doctest::Approx(sr[i]).epsilon(1e-12));

  // The binary fast path grows the same trees as the generic path.
  auto d = train_random_forest(FeatureMatrix::dense(FeatureKind::kBow, x), y,
                               {.trees = 25, .seed = 5});
  CHECK(d.trees == a.trees);

  auto other = train_random_forest(sparse(x), y, {.trees = 25, .seed = 6});
  CHECK(other.trees != a.trees);
}

}  // TEST_SUITE
