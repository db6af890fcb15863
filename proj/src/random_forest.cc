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
#include <unordered_map>

#include "phirisk/error.h"
#include "phirisk/models.h"
#include "phirisk/parallel.h"
#include "phirisk/rng.h"

namespace phirisk {
namespace {

struct ClassCounts {
  std::size_t low = 0;
  std::size_t high = 0;

  std::size_t total() const { return low + high; }
  void add(int label) { (label == 1 ? high : low) += 1; }
};

// Impurities closer than this count as tied; the first candidate examined wins.
constexpr double kTieTolerance = 1e-12;

double weighted_gini(const ClassCounts& left, const ClassCounts& right) {
  double n = static_cast<double>(left.total() + right.total());
  return (static_cast<double>(left.total()) * gini_impurity(left.low, left.high) +
          static_cast<double>(right.total()) * gini_impurity(right.low, right.high)) /
         n;
}

// Best threshold of one feature over samples by sorting values.
std::optional<SplitChoice> split_by_sorting(const FeatureMatrix& x, std::span<const int> y,
                                            std::span<const std::size_t> samples,
                                            std::size_t feature) {
  std::vector<std::pair<double, int>> values;
  values.reserve(samples.size());
  ClassCounts right;
  for (std::size_t s : samples) {
    values.emplace_back(x.at(s, feature), y[s]);
    right.add(y[s]);
  }
  std::sort(values.begin(), values.end());
  ClassCounts left;
  std::optional<SplitChoice> best;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    left.add(values[i].second);
    (values[i].second == 1 ? right.high : right.low) -= 1;
    if (values[i].first == values[i + 1].first) continue;
    double impurity = weighted_gini(left, right);
    if (!best || impurity < best->impurity - kTieTolerance) {
      double threshold = values[i].first + (values[i + 1].first - values[i].first) / 2.0;
      best = SplitChoice{feature, threshold, impurity};
    }
  }
  return best;
}

// Binary sparse input: every candidate split is "absent vs present" at 0.5,
// so one pass over the active lists of the node's samples counts them all.
std::optional<SplitChoice> best_binary_split(const FeatureMatrix& x, std::span<const int> y,
                                             std::span<const std::size_t> samples,
                                             std::span<const std::size_t> features,
                                             std::vector<int>& slot_of_feature) {
  for (std::size_t k = 0; k < features.size(); ++k) {
    slot_of_feature[features[k]] = static_cast<int>(k);
  }
  std::vector<ClassCounts> present(features.size());
  ClassCounts all;
  for (std::size_t s : samples) {
    all.add(y[s]);
    for (std::uint32_t col : x.active(s)) {
      int slot = slot_of_feature[col];
      if (slot >= 0) present[static_cast<std::size_t>(slot)].add(y[s]);
    }
  }
  for (std::size_t f : features) slot_of_feature[f] = -1;

  std::optional<SplitChoice> best;
  for (std::size_t k = 0; k < features.size(); ++k) {
    const ClassCounts& right = present[k];
    if (right.total() == 0 || right.total() == all.total()) continue;
    ClassCounts left{all.low - right.low, all.high - right.high};
    double impurity = weighted_gini(left, right);
    if (!best || impurity < best->impurity - kTieTolerance) {
      best = SplitChoice{features[k], 0.5, impurity};
    }
  }
  return best;
}

class TreeBuilder {
 public:
  TreeBuilder(const FeatureMatrix& x, std::span<const int> y, std::size_t max_features,
              std::uint64_t seed)
      : x_(x), y_(y), max_features_(max_features), rng_(seed) {
    if (x_.is_sparse()) slot_of_feature_.assign(x_.cols(), -1);
  }

  DecisionTree build(std::vector<std::size_t> samples) {
    DecisionTree tree;
    struct Pending {
      int node;
      std::vector<std::size_t> samples;
    };
    std::vector<Pending> stack;
    tree.nodes.emplace_back();
    stack.push_back({0, std::move(samples)});
    while (!stack.empty()) {
      Pending item = std::move(stack.back());
      stack.pop_back();
      ClassCounts counts;
      for (std::size_t s : item.samples) counts.add(y_[s]);
      std::optional<SplitChoice> split;
      if (counts.low != 0 && counts.high != 0 && item.samples.size() >= 2) {
        split = choose_split(item.samples);
      }
      if (!split) {
        auto& leaf = tree.nodes[static_cast<std::size_t>(item.node)];
        leaf.high_fraction =
            static_cast<double>(counts.high) / static_cast<double>(counts.total());
        continue;
      }
      std::vector<std::size_t> left;
      std::vector<std::size_t> right;
      for (std::size_t s : item.samples) {
        (x_.at(s, split->feature) <= split->threshold ? left : right).push_back(s);
      }
      int left_id = static_cast<int>(tree.nodes.size());
      tree.nodes.emplace_back();
      int right_id = static_cast<int>(tree.nodes.size());
      tree.nodes.emplace_back();
      auto& node = tree.nodes[static_cast<std::size_t>(item.node)];
      node.feature = static_cast<int>(split->feature);
      node.threshold = split->threshold;
      node.left = left_id;
      node.right = right_id;
      stack.push_back({right_id, std::move(right)});
      stack.push_back({left_id, std::move(left)});
    }
    return tree;
  }

 private:
  // Features are drawn without replacement in batches of max_features; if a
  // batch holds no valid split the draw continues until one is found or every
  // feature has been tried.
  std::optional<SplitChoice> choose_split(std::span<const std::size_t> samples) {
    const std::size_t d = x_.cols();
    std::unordered_map<std::size_t, std::size_t> swapped;
    auto slot = [&](std::size_t i) {
      auto it = swapped.find(i);
      return it == swapped.end() ? i : it->second;
    };
    std::size_t drawn = 0;
    std::vector<std::size_t> batch;
    while (drawn < d) {
      batch.clear();
      std::size_t stop = std::min(d, drawn + max_features_);
      for (; drawn < stop; ++drawn) {
        std::size_t pick = drawn + static_cast<std::size_t>(rng_.below(d - drawn));
        std::size_t chosen = slot(pick);
        swapped[pick] = slot(drawn);
        swapped[drawn] = chosen;
        batch.push_back(chosen);
      }
      auto split = find_split(samples, batch);
      if (split) return split;
    }
    return std::nullopt;
  }

  std::optional<SplitChoice> find_split(std::span<const std::size_t> samples,
                                        std::span<const std::size_t> features) {
    if (x_.is_sparse()) {
      return best_binary_split(x_, y_, samples, features, slot_of_feature_);
    }
    return find_best_split(x_, y_, samples, features);
  }

  const FeatureMatrix& x_;
  std::span<const int> y_;
  std::size_t max_features_;
  Rng rng_;
  std::vector<int> slot_of_feature_;
};

}  // namespace

double gini_impurity(std::size_t low, std::size_t high) {
  double n = static_cast<double>(low + high);
  if (n == 0.0) return 0.0;
  double p0 = static_cast<double>(low) / n;
  double p1 = static_cast<double>(high) / n;
  return 1.0 - p0 * p0 - p1 * p1;
}

std::optional<SplitChoice> find_best_split(const FeatureMatrix& x, std::span<const int> y,
                                           std::span<const std::size_t> samples,
                                           std::span<const std::size_t> features) {
  std::optional<SplitChoice> best;
  for (std::size_t f : features) {
    auto split = split_by_sorting(x, y, samples, f);
    if (split && (!best || split->impurity < best->impurity - kTieTolerance)) best = split;
  }
  return best;
}

double DecisionTree::predict_high(const FeatureMatrix& x, std::size_t row) const {
  std::size_t node = 0;
  while (nodes[node].feature >= 0) {
    const TreeNode& n = nodes[node];
    double v = x.at(row, static_cast<std::size_t>(n.feature));
    node = static_cast<std::size_t>(v <= n.threshold ? n.left : n.right);
  }
  return nodes[node].high_fraction;
}

RandomForestModel train_random_forest(const FeatureMatrix& x, std::span<const int> y,
                                      const RandomForestParams& params) {
  check_training_input(x, y);
  if (params.trees < 1) throw Error(ErrorCode::kInvalidConfig, "forest needs >= 1 tree");
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  std::size_t max_features =
      params.max_features.value_or(static_cast<std::size_t>(std::sqrt(static_cast<double>(d))));
  max_features = std::clamp<std::size_t>(max_features, 1, std::max<std::size_t>(d, 1));

  RandomForestModel model;
  model.input = {x.kind(), d};
  model.params = params;
  model.trees.resize(static_cast<std::size_t>(params.trees));
  parallel_for(model.trees.size(), [&](std::size_t t) {
    std::vector<std::size_t> samples(n);
    if (params.bootstrap) {
      Rng draw(derive_seed(params.seed, "forest-bootstrap", t));
      for (auto& s : samples) s = static_cast<std::size_t>(draw.below(n));
    } else {
      for (std::size_t i = 0; i < n; ++i) samples[i] = i;
    }
    TreeBuilder builder(x, y, max_features, derive_seed(params.seed, "forest-features", t));
    model.trees[t] = builder.build(std::move(samples));
  });
  return model;
}

std::vector<double> RandomForestModel::decision_scores(const FeatureMatrix& x) const {
  check_prediction_input(input, x);
  std::vector<double> scores(x.rows(), 0.0);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    double sum = 0.0;
    for (const auto& tree : trees) sum += tree.predict_high(x, r);
    scores[r] = sum / static_cast<double>(trees.size());
  }
  return scores;
}

}  // namespace phirisk
