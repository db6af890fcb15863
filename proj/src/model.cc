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

#include "phirisk/error.h"
#include "phirisk/models.h"
#include "phirisk/text.h"

namespace phirisk {

std::string_view model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::kBernoulliNb: return "bnb";
    case ModelKind::kGaussianNb: return "gnb";
    case ModelKind::kAdaBoost: return "ada";
    case ModelKind::kRandomForest: return "rf";
    case ModelKind::kLinearSvm: return "lsvm";
    case ModelKind::kKernelSvm: return "svm";
  }
  return "unknown";
}

std::string_view model_display_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::kBernoulliNb: return "Bernoulli Naive Bayes";
    case ModelKind::kGaussianNb: return "Gaussian Naive Bayes";
    case ModelKind::kAdaBoost: return "AdaBoost";
    case ModelKind::kRandomForest: return "RandomForest";
    case ModelKind::kLinearSvm: return "LinearSVM";
    case ModelKind::kKernelSvm: return "SVM";
  }
  return "unknown";
}

std::optional<ModelKind> parse_model_kind(std::string_view name) {
  for (ModelKind kind : kAllModelKinds) {
    if (model_kind_name(kind) == name) return kind;
  }
  return std::nullopt;
}

void check_training_input(const FeatureMatrix& x, std::span<const int> y) {
  if (x.rows() != y.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(x.rows()) + " rows but " + std::to_string(y.size()) + " labels");
  }
  bool seen[2] = {false, false};
  for (int label : y) {
    if (label != 0 && label != 1) {
      throw Error(ErrorCode::kMalformedRecord, "labels must be 0 or 1");
    }
    seen[label] = true;
  }
  if (!seen[0] || !seen[1]) {
    throw Error(ErrorCode::kSingleClassInput, "training labels hold a single class");
  }
}

void check_prediction_input(const FeatureSignature& input, const FeatureMatrix& x) {
  if (x.kind() != input.kind) {
    throw Error(ErrorCode::kKindMismatch,
                "model trained on " + std::string(feature_kind_name(input.kind)) +
                    " features, got " + std::string(feature_kind_name(x.kind())));
  }
  if (x.cols() != input.width) {
    throw Error(ErrorCode::kDimensionMismatch,
                "model expects " + std::to_string(input.width) + " features, got " +
                    std::to_string(x.cols()));
  }
}

TrainedModel train_model(ModelKind kind, const FeatureMatrix& x, std::span<const int> y,
                         const TrainOptions& options) {
  switch (kind) {
    case ModelKind::kBernoulliNb: return train_bernoulli_nb(x, y, options.bnb);
    case ModelKind::kGaussianNb: return train_gaussian_nb(x, y, options.gnb);
    case ModelKind::kAdaBoost: return train_adaboost(x, y, options.ada);
    case ModelKind::kRandomForest: return train_random_forest(x, y, options.rf);
    case ModelKind::kLinearSvm: return train_linear_svm(x, y, options.lsvm);
    case ModelKind::kKernelSvm: return train_kernel_svm(x, y, options.svm);
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown model kind");
}

ModelKind model_kind(const TrainedModel& model) {
  return static_cast<ModelKind>(model.index());
}

const FeatureSignature& model_input(const TrainedModel& model) {
  return std::visit([](const auto& m) -> const FeatureSignature& { return m.input; }, model);
}

double decision_threshold(ModelKind kind) {
  return kind == ModelKind::kRandomForest ? 0.5 : 0.0;
}

std::vector<double> decision_scores(const TrainedModel& model, const FeatureMatrix& x) {
  return std::visit([&](const auto& m) { return m.decision_scores(x); }, model);
}

std::vector<int> predict(const TrainedModel& model, const FeatureMatrix& x,
                         const PredictOptions& options) {
  auto scores = decision_scores(model, x);
  double threshold = decision_threshold(model_kind(model));
  std::vector<int> labels(scores.size());
  for (std::size_t r = 0; r < scores.size(); ++r) {
    bool high = options.tie_high ? scores[r] >= threshold : scores[r] > threshold;
    labels[r] = high ? 1 : 0;
  }
  return labels;
}

std::map<std::string, std::string> hyperparameters(ModelKind kind,
                                                   const TrainOptions& options) {
  std::map<std::string, std::string> out;
  switch (kind) {
    case ModelKind::kBernoulliNb:
      out["alpha"] = format_double(options.bnb.alpha);
      out["binarize_at"] =
          options.bnb.binarize_at ? format_double(*options.bnb.binarize_at) : "none";
      break;
    case ModelKind::kGaussianNb:
      out["var_smoothing"] = format_double(options.gnb.var_smoothing);
      break;
    case ModelKind::kAdaBoost:
      out["rounds"] = std::to_string(options.ada.rounds);
      out["learning_rate"] = format_double(options.ada.learning_rate);
      break;
    case ModelKind::kRandomForest:
      out["trees"] = std::to_string(options.rf.trees);
      out["bootstrap"] = options.rf.bootstrap ? "true" : "false";
      out["max_features"] =
          options.rf.max_features ? std::to_string(*options.rf.max_features) : "sqrt";
      out["criterion"] = "gini";
      break;
    case ModelKind::kLinearSvm:
      out["C"] = format_double(options.lsvm.c);
      out["loss"] = "squared_hinge";
      out["tolerance"] = format_double(options.lsvm.tolerance);
      out["max_epochs"] = std::to_string(options.lsvm.max_epochs);
      break;
    case ModelKind::kKernelSvm:
      out["C"] = format_double(options.svm.c);
      out["kernel"] = "rbf";
      out["gamma"] = options.svm.gamma ? format_double(*options.svm.gamma) : "scale";
      out["tolerance"] = format_double(options.svm.tolerance);
      break;
  }
  return out;
}

std::vector<std::string> training_warnings(const TrainedModel& model) {
  std::vector<std::string> warnings;
  if (const auto* m = std::get_if<LinearSvmModel>(&model); m && !m->converged) {
    warnings.push_back("NonConvergence: linear SVM stopped after " +
                       std::to_string(m->epochs) + " epochs");
  }
  if (const auto* m = std::get_if<KernelSvmModel>(&model); m && !m->converged) {
    warnings.push_back("NonConvergence: kernel SVM stopped after " +
                       std::to_string(m->iterations) + " pair updates");
  }
  return warnings;
}

}  // namespace phirisk
