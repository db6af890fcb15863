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
#ifndef PHIRISK_MODELS_H_
#define PHIRISK_MODELS_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "phirisk/feature_matrix.h"

namespace phirisk {

// Binary classifiers over FeatureMatrix rows. Labels are 0 (low risk) and
// 1 (high risk); margin-based learners map them to -1/+1 internally.

enum class ModelKind {
  kBernoulliNb,
  kGaussianNb,
  kAdaBoost,
  kRandomForest,
  kLinearSvm,
  kKernelSvm,
};

inline constexpr std::array<ModelKind, 6> kAllModelKinds = {
    ModelKind::kBernoulliNb,  ModelKind::kGaussianNb, ModelKind::kAdaBoost,
    ModelKind::kRandomForest, ModelKind::kLinearSvm,  ModelKind::kKernelSvm,
};

std::string_view model_kind_name(ModelKind kind);  // bnb gnb ada rf lsvm svm
std::string_view model_display_name(ModelKind kind);
std::optional<ModelKind> parse_model_kind(std::string_view name);

// Kind and width of the matrix a model was trained on.
struct FeatureSignature {
  FeatureKind kind = FeatureKind::kBow;
  std::size_t width = 0;

  bool operator==(const FeatureSignature&) const = default;
};

// ---------------------------------------------------------------------------
// Naive Bayes

struct BernoulliNbParams {
  double alpha = 1.0;
  // When set, entries greater than this value count as 1 and others as 0.
  // Without it, non-binary input is rejected with kKindMismatch.
  std::optional<double> binarize_at;

  bool operator==(const BernoulliNbParams&) const = default;
};

struct BernoulliNbModel {
  FeatureSignature input;
  BernoulliNbParams params;
  std::array<double, 2> log_prior{};
  std::array<std::vector<double>, 2> log_present;  // log P(x_j = 1 | c)
  std::array<std::vector<double>, 2> log_absent;   // log P(x_j = 0 | c)

  // Per-row joint log likelihood log P(c) + log P(x | c).
  std::vector<std::array<double, 2>> joint_log_likelihood(const FeatureMatrix& x) const;
  std::vector<std::array<double, 2>> posteriors(const FeatureMatrix& x) const;
  // Class-1 log-odds.
  std::vector<double> decision_scores(const FeatureMatrix& x) const;

  bool operator==(const BernoulliNbModel&) const = default;
};

BernoulliNbModel train_bernoulli_nb(const FeatureMatrix& x, std::span<const int> y,
                                    const BernoulliNbParams& params = {});

struct GaussianNbParams {
  double var_smoothing = 1e-9;

  bool operator==(const GaussianNbParams&) const = default;
};

struct GaussianNbModel {
  FeatureSignature input;
  GaussianNbParams params;
  std::array<double, 2> log_prior{};
  std::array<std::vector<double>, 2> mean;
  std::array<std::vector<double>, 2> variance;  // already includes epsilon
  double epsilon = 0.0;

  std::vector<std::array<double, 2>> joint_log_likelihood(const FeatureMatrix& x) const;
  std::vector<std::array<double, 2>> posteriors(const FeatureMatrix& x) const;
  std::vector<double> decision_scores(const FeatureMatrix& x) const;

  bool operator==(const GaussianNbModel&) const = default;
};

// Variances get epsilon = var_smoothing * (largest per-feature variance over
// all rows). When every feature is constant, epsilon falls back to
// var_smoothing itself so no variance is zero.
GaussianNbModel train_gaussian_nb(const FeatureMatrix& x, std::span<const int> y,
                                  const GaussianNbParams& params = {});

// ---------------------------------------------------------------------------
// AdaBoost over decision stumps

struct Stump {
  std::size_t feature = 0;
  double threshold = 0.0;
  int polarity = 1;  // vote polarity when value > threshold, -polarity otherwise

  int vote(double value) const { return value > threshold ? polarity : -polarity; }

  bool operator==(const Stump&) const = default;
};

struct AdaBoostParams {
  int rounds = 50;
  double learning_rate = 1.0;

  bool operator==(const AdaBoostParams&) const = default;
};

struct AdaBoostModel {
  FeatureSignature input;
  AdaBoostParams params;
  std::vector<Stump> stumps;
  std::vector<double> stage_weights;
  // Training trace, one entry per accepted round: weighted error of the
  // chosen stump and the sum of sample weights after renormalization.
  std::vector<double> round_errors;
  std::vector<double> weight_sums;

  // Weighted vote sum over stumps.
  std::vector<double> decision_scores(const FeatureMatrix& x) const;

  bool operator==(const AdaBoostModel&) const = default;
};

// Error below this is treated as a perfect stump; its stage weight is
// computed at this error instead of infinity.
inline constexpr double kAdaBoostMinError = 1e-10;

// Discrete two-class boosting. Each round picks the stump with least
// weighted error over every feature, every midpoint between consecutive
// distinct values, and both polarities (ties keep the lowest feature, then
// the lowest threshold, then polarity +1).
AdaBoostModel train_adaboost(const FeatureMatrix& x, std::span<const int> y,
                             const AdaBoostParams& params = {});

// Best single stump under sample weights (for tests and diagnostics).
// Returns the stump and its weighted error; nullopt if no feature varies.
std::optional<std::pair<Stump, double>> best_stump(const FeatureMatrix& x,
                                                   std::span<const int> y,
                                                   std::span<const double> weights);

// ---------------------------------------------------------------------------
// Random forest

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;   // value <= threshold
  int right = -1;  // value > threshold
  double high_fraction = 0.0;  // leaf class-1 frequency

  bool operator==(const TreeNode&) const = default;
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  double predict_high(const FeatureMatrix& x, std::size_t row) const;

  bool operator==(const DecisionTree&) const = default;
};

struct RandomForestParams {
  int trees = 100;
  bool bootstrap = true;
  // Features examined per split; floor(sqrt(d)) (at least 1) when unset.
  std::optional<std::size_t> max_features;
  std::uint64_t seed = 42;

  bool operator==(const RandomForestParams&) const = default;
};

struct RandomForestModel {
  FeatureSignature input;
  RandomForestParams params;
  std::vector<DecisionTree> trees;

  // Mean class-1 leaf frequency over trees.
  std::vector<double> decision_scores(const FeatureMatrix& x) const;

  bool operator==(const RandomForestModel&) const = default;
};

struct SplitChoice {
  std::size_t feature = 0;
  double threshold = 0.0;
  double impurity = 0.0;  // size-weighted mean Gini impurity of the children

  bool operator==(const SplitChoice&) const = default;
};

double gini_impurity(std::size_t low, std::size_t high);

// Lowest-impurity split of samples (repeats allowed) over the given features,
// thresholds at midpoints between consecutive distinct values. Ties keep the
// earlier feature in the list, then the lower threshold.
std::optional<SplitChoice> find_best_split(const FeatureMatrix& x, std::span<const int> y,
                                           std::span<const std::size_t> samples,
                                           std::span<const std::size_t> features);

RandomForestModel train_random_forest(const FeatureMatrix& x, std::span<const int> y,
                                      const RandomForestParams& params = {});

// ---------------------------------------------------------------------------
// Support vector machines

struct LinearSvmParams {
  double c = 1.0;
  double tolerance = 1e-4;  // on the largest projected-gradient violation
  int max_epochs = 1000;
  std::uint64_t seed = 42;  // coordinate order

  bool operator==(const LinearSvmParams&) const = default;
};

struct LinearSvmModel {
  FeatureSignature input;
  LinearSvmParams params;
  std::vector<double> weights;
  double bias = 0.0;
  bool converged = false;
  int epochs = 0;
  // Dual objective (minimization form) after each epoch.
  std::vector<double> dual_objective;

  // w.x + b
  std::vector<double> decision_scores(const FeatureMatrix& x) const;

  bool operator==(const LinearSvmModel&) const = default;
};

// Primal objective minimized by train_linear_svm: the bias is treated as
// the weight of a constant unit feature and is regularized with w,
//   0.5 * (|w|^2 + b^2) + C * sum_i max(0, 1 - y_i (w.x_i + b))^2.
double linear_svm_objective(std::span<const double> weights, double bias,
                            const FeatureMatrix& x, std::span<const int> y, double c);

// Squared-hinge L2-regularized linear SVM solved by dual coordinate descent.
LinearSvmModel train_linear_svm(const FeatureMatrix& x, std::span<const int> y,
                                const LinearSvmParams& params = {});

struct KernelSvmParams {
  double c = 1.0;
  std::optional<double> gamma;  // unset means "scale"
  double tolerance = 1e-3;
  std::size_t cache_mb = 256;
  // Pair-update cap; 10 * n^2 when unset.
  std::optional<std::size_t> max_iterations;

  bool operator==(const KernelSvmParams&) const = default;
};

struct KernelSvmModel {
  FeatureSignature input;
  KernelSvmParams params;
  double gamma = 0.0;
  FeatureMatrix support_vectors;
  std::vector<std::size_t> support_indices;  // training rows, ascending
  std::vector<double> dual_coef;             // alpha_i * y_i
  double bias = 0.0;
  bool converged = false;
  std::size_t iterations = 0;

  double kernel(const FeatureMatrix& x, std::size_t row, std::size_t support) const;
  // sum_i alpha_i y_i k(x_i, x) + b
  std::vector<double> decision_scores(const FeatureMatrix& x) const;

  bool operator==(const KernelSvmModel&) const = default;
};

// 1 / (d * mean per-feature variance), or 1 when that variance is zero.
double scale_gamma(const FeatureMatrix& x);

// RBF C-SVM trained by SMO with second-order working-set selection.
KernelSvmModel train_kernel_svm(const FeatureMatrix& x, std::span<const int> y,
                                const KernelSvmParams& params = {});

// ---------------------------------------------------------------------------
// Uniform interface

using TrainedModel = std::variant<BernoulliNbModel, GaussianNbModel, AdaBoostModel,
                                  RandomForestModel, LinearSvmModel, KernelSvmModel>;

struct TrainOptions {
  BernoulliNbParams bnb;
  GaussianNbParams gnb;
  AdaBoostParams ada;
  RandomForestParams rf;
  LinearSvmParams lsvm;
  KernelSvmParams svm;

  // Points every seeded learner at seed.
  void set_seed(std::uint64_t seed) {
    rf.seed = seed;
    lsvm.seed = seed;
  }
};

struct PredictOptions {
  bool tie_high = false;  // scores exactly at the threshold predict 1
};

TrainedModel train_model(ModelKind kind, const FeatureMatrix& x, std::span<const int> y,
                         const TrainOptions& options = {});

ModelKind model_kind(const TrainedModel& model);
const FeatureSignature& model_input(const TrainedModel& model);

// Score above which the label is 1: 0.5 for the forest, 0 otherwise.
double decision_threshold(ModelKind kind);

// Throws kKindMismatch or kDimensionMismatch when x differs from the
// training input.
std::vector<double> decision_scores(const TrainedModel& model, const FeatureMatrix& x);
std::vector<int> predict(const TrainedModel& model, const FeatureMatrix& x,
                         const PredictOptions& options = {});

// Hyperparameters as strings, for reports.
std::map<std::string, std::string> hyperparameters(ModelKind kind,
                                                   const TrainOptions& options);

// Non-fatal training notices, e.g. NonConvergence.
std::vector<std::string> training_warnings(const TrainedModel& model);

// Shared argument checks: sizes agree, labels in {0,1}, both classes present.
void check_training_input(const FeatureMatrix& x, std::span<const int> y);
void check_prediction_input(const FeatureSignature& input, const FeatureMatrix& x);

}  // namespace phirisk

#endif  // PHIRISK_MODELS_H_
