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
#include "phirisk/model_io.h"

#include "json.hpp"
#include "phirisk/error.h"
#include "phirisk/text.h"

namespace phirisk {
namespace {

using nlohmann::json;

json signature_json(const FeatureSignature& s) {
  return {{"kind", feature_kind_name(s.kind)}, {"width", s.width}};
}

FeatureKind kind_from(const json& j) {
  auto kind = parse_feature_kind(j.get<std::string>());
  if (!kind) throw Error(ErrorCode::kMalformedRecord, "unknown feature kind " + j.dump());
  return *kind;
}

FeatureSignature signature_from(const json& j) {
  return {kind_from(j.at("kind")), j.at("width").get<std::size_t>()};
}

json matrix_json(const FeatureMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (m.is_sparse()) {
      auto active = m.active(r);
      rows.push_back(std::vector<std::uint32_t>(active.begin(), active.end()));
    } else {
      auto values = m.dense_row(r);
      rows.push_back(std::vector<double>(values.begin(), values.end()));
    }
  }
  return {{"kind", feature_kind_name(m.kind())},
          {"sparse", m.is_sparse()},
          {"cols", m.cols()},
          {"rows", rows}};
}

FeatureMatrix matrix_from(const json& j) {
  FeatureKind kind = kind_from(j.at("kind"));
  std::size_t cols = j.at("cols").get<std::size_t>();
  if (j.at("sparse").get<bool>()) {
    return FeatureMatrix::binary(kind, cols,
                                 j.at("rows").get<std::vector<std::vector<std::uint32_t>>>());
  }
  std::vector<double> values;
  for (const auto& row : j.at("rows")) {
    auto r = row.get<std::vector<double>>();
    if (r.size() != cols) throw Error(ErrorCode::kMalformedRecord, "ragged support vectors");
    values.insert(values.end(), r.begin(), r.end());
  }
  return FeatureMatrix::dense(kind, cols, std::move(values));
}

template <typename T>
json pair_json(const std::array<T, 2>& a) {
  return json::array({a[0], a[1]});
}

template <typename T>
std::array<T, 2> pair_from(const json& j) {
  return {j.at(0).get<T>(), j.at(1).get<T>()};
}

json parameters_json(const TrainedModel& model) {
  return std::visit(
      [](const auto& m) -> json {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, BernoulliNbModel>) {
          json binarize = m.params.binarize_at ? json(*m.params.binarize_at) : json(nullptr);
          return {{"alpha", m.params.alpha},
                  {"binarize_at", binarize},
                  {"log_prior", pair_json(m.log_prior)},
                  {"log_present", pair_json(m.log_present)},
                  {"log_absent", pair_json(m.log_absent)}};
        } else if constexpr (std::is_same_v<M, GaussianNbModel>) {
          return {{"var_smoothing", m.params.var_smoothing},
                  {"epsilon", m.epsilon},
                  {"log_prior", pair_json(m.log_prior)},
                  {"mean", pair_json(m.mean)},
                  {"variance", pair_json(m.variance)}};
        } else if constexpr (std::is_same_v<M, AdaBoostModel>) {
          json stumps = json::array();
          for (const Stump& s : m.stumps) {
            stumps.push_back({{"feature", s.feature},
                              {"threshold", s.threshold},
                              {"polarity", s.polarity}});
          }
          return {{"rounds", m.params.rounds},
                  {"learning_rate", m.params.learning_rate},
                  {"stumps", stumps},
                  {"stage_weights", m.stage_weights},
                  {"round_errors", m.round_errors},
                  {"weight_sums", m.weight_sums}};
        } else if constexpr (std::is_same_v<M, RandomForestModel>) {
          json trees = json::array();
          for (const DecisionTree& tree : m.trees) {
            json nodes = json::array();
            for (const TreeNode& n : tree.nodes) {
              nodes.push_back(json::array({n.feature, n.threshold, n.left, n.right,
                                           n.high_fraction}));
            }
            trees.push_back(nodes);
          }
          json max_features =
              m.params.max_features ? json(*m.params.max_features) : json(nullptr);
          return {{"trees", m.params.trees},
                  {"bootstrap", m.params.bootstrap},
                  {"max_features", max_features},
                  {"seed", m.params.seed},
                  {"forest", trees}};
        } else if constexpr (std::is_same_v<M, LinearSvmModel>) {
          return {{"C", m.params.c},
                  {"tolerance", m.params.tolerance},
                  {"max_epochs", m.params.max_epochs},
                  {"seed", m.params.seed},
                  {"weights", m.weights},
                  {"bias", m.bias},
                  {"converged", m.converged},
                  {"epochs", m.epochs},
                  {"dual_objective", m.dual_objective}};
        } else {
          json gamma = m.params.gamma ? json(*m.params.gamma) : json(nullptr);
          json cap = m.params.max_iterations ? json(*m.params.max_iterations) : json(nullptr);
          return {{"C", m.params.c},
                  {"gamma_setting", gamma},
                  {"tolerance", m.params.tolerance},
                  {"cache_mb", m.params.cache_mb},
                  {"max_iterations", cap},
                  {"gamma", m.gamma},
                  {"support_vectors", matrix_json(m.support_vectors)},
                  {"support_indices", m.support_indices},
                  {"dual_coef", m.dual_coef},
                  {"bias", m.bias},
                  {"converged", m.converged},
                  {"iterations", m.iterations}};
        }
      },
      model);
}

TrainedModel model_from(ModelKind kind, const FeatureSignature& input, const json& p) {
  switch (kind) {
    case ModelKind::kBernoulliNb: {
      BernoulliNbModel m;
      m.input = input;
      m.params.alpha = p.at("alpha").get<double>();
      if (!p.at("binarize_at").is_null()) m.params.binarize_at = p.at("binarize_at").get<double>();
      m.log_prior = pair_from<double>(p.at("log_prior"));
      m.log_present = pair_from<std::vector<double>>(p.at("log_present"));
      m.log_absent = pair_from<std::vector<double>>(p.at("log_absent"));
      return m;
    }
    case ModelKind::kGaussianNb: {
      GaussianNbModel m;
      m.input = input;
      m.params.var_smoothing = p.at("var_smoothing").get<double>();
      m.epsilon = p.at("epsilon").get<double>();
      m.log_prior = pair_from<double>(p.at("log_prior"));
      m.mean = pair_from<std::vector<double>>(p.at("mean"));
      m.variance = pair_from<std::vector<double>>(p.at("variance"));
      return m;
    }
    case ModelKind::kAdaBoost: {
      AdaBoostModel m;
      m.input = input;
      m.params.rounds = p.at("rounds").get<int>();
      m.params.learning_rate = p.at("learning_rate").get<double>();
      for (const auto& s : p.at("stumps")) {
        m.stumps.push_back({s.at("feature").get<std::size_t>(), s.at("threshold").get<double>(),
                            s.at("polarity").get<int>()});
      }
      m.stage_weights = p.at("stage_weights").get<std::vector<double>>();
      m.round_errors = p.at("round_errors").get<std::vector<double>>();
      m.weight_sums = p.at("weight_sums").get<std::vector<double>>();
      return m;
    }
    case ModelKind::kRandomForest: {
      RandomForestModel m;
      m.input = input;
      m.params.trees = p.at("trees").get<int>();
      m.params.bootstrap = p.at("bootstrap").get<bool>();
      if (!p.at("max_features").is_null()) {
        m.params.max_features = p.at("max_features").get<std::size_t>();
      }
      m.params.seed = p.at("seed").get<std::uint64_t>();
      for (const auto& t : p.at("forest")) {
        DecisionTree tree;
        for (const auto& n : t) {
          tree.nodes.push_back({n.at(0).get<int>(), n.at(1).get<double>(), n.at(2).get<int>(),
                                n.at(3).get<int>(), n.at(4).get<double>()});
        }
        m.trees.push_back(std::move(tree));
      }
      return m;
    }
    case ModelKind::kLinearSvm: {
      LinearSvmModel m;
      m.input = input;
      m.params.c = p.at("C").get<double>();
      m.params.tolerance = p.at("tolerance").get<double>();
      m.params.max_epochs = p.at("max_epochs").get<int>();
      m.params.seed = p.at("seed").get<std::uint64_t>();
      m.weights = p.at("weights").get<std::vector<double>>();
      m.bias = p.at("bias").get<double>();
      m.converged = p.at("converged").get<bool>();
      m.epochs = p.at("epochs").get<int>();
      m.dual_objective = p.at("dual_objective").get<std::vector<double>>();
      return m;
    }
    case ModelKind::kKernelSvm: {
      KernelSvmModel m;
      m.input = input;
      m.params.c = p.at("C").get<double>();
      if (!p.at("gamma_setting").is_null()) m.params.gamma = p.at("gamma_setting").get<double>();
      m.params.tolerance = p.at("tolerance").get<double>();
      m.params.cache_mb = p.at("cache_mb").get<std::size_t>();
      if (!p.at("max_iterations").is_null()) {
        m.params.max_iterations = p.at("max_iterations").get<std::size_t>();
      }
      m.gamma = p.at("gamma").get<double>();
      m.support_vectors = matrix_from(p.at("support_vectors"));
      m.support_indices = p.at("support_indices").get<std::vector<std::size_t>>();
      m.dual_coef = p.at("dual_coef").get<std::vector<double>>();
      m.bias = p.at("bias").get<double>();
      m.converged = p.at("converged").get<bool>();
      m.iterations = p.at("iterations").get<std::size_t>();
      return m;
    }
  }
  throw Error(ErrorCode::kMalformedRecord, "unknown model kind");
}

}  // namespace

FeatureFingerprint fingerprint_of(const Vocabulary& vocab) {
  return {FeatureKind::kBow, vocab.fingerprint(), vocab.size()};
}

FeatureFingerprint fingerprint_of(const EmbeddingTable& table) {
  return {FeatureKind::kEmbedding, table.fingerprint(), table.dimension()};
}

std::string save_model_json(const ModelBundle& bundle) {
  ModelKind kind = model_kind(bundle.model);
  json hyper = json::object();
  // Only the stored model's own settings are reported here.
  TrainOptions options;
  std::visit(
      [&](const auto& m) {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, BernoulliNbModel>) options.bnb = m.params;
        if constexpr (std::is_same_v<M, GaussianNbModel>) options.gnb = m.params;
        if constexpr (std::is_same_v<M, AdaBoostModel>) options.ada = m.params;
        if constexpr (std::is_same_v<M, RandomForestModel>) options.rf = m.params;
        if constexpr (std::is_same_v<M, LinearSvmModel>) options.lsvm = m.params;
        if constexpr (std::is_same_v<M, KernelSvmModel>) options.svm = m.params;
      },
      bundle.model);
  for (const auto& [key, value] : hyperparameters(kind, options)) hyper[key] = value;

  json out;
  out["format"] = "phirisk-model";
  out["version"] = kModelFormatVersion;
  out["model"] = model_kind_name(kind);
  out["hyperparameters"] = hyper;
  out["seed"] = bundle.seed;
  out["features"] = {{"kind", feature_kind_name(bundle.features.kind)},
                     {"fingerprint", hex64(bundle.features.hash)},
                     {"width", bundle.features.width}};
  out["input"] = signature_json(model_input(bundle.model));
  out["parameters"] = parameters_json(bundle.model);
  return out.dump(1) + "\n";
}

ModelBundle load_model_json(std::string_view text) {
  json in;
  try {
    in = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kUnknownFormat, std::string("not a JSON model: ") + e.what());
  }
  if (!in.is_object() || in.value("format", "") != "phirisk-model") {
    throw Error(ErrorCode::kUnknownFormat, "not a phirisk model container");
  }
  if (in.value("version", 0) != kModelFormatVersion) {
    throw Error(ErrorCode::kUnknownFormat,
                "unsupported model format version " + in.at("version").dump());
  }
  try {
    auto kind = parse_model_kind(in.at("model").get<std::string>());
    if (!kind) throw Error(ErrorCode::kUnknownFormat, "unknown model " + in.at("model").dump());
    ModelBundle bundle{model_from(*kind, signature_from(in.at("input")), in.at("parameters")),
                       {}, in.at("seed").get<std::uint64_t>()};
    const json& f = in.at("features");
    bundle.features.kind = kind_from(f.at("kind"));
    bundle.features.hash = std::stoull(f.at("fingerprint").get<std::string>(), nullptr, 16);
    bundle.features.width = f.at("width").get<std::size_t>();
    return bundle;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedRecord, e.what());
  }
}

std::vector<int> predict_checked(const ModelBundle& bundle,
                                 const FeatureFingerprint& featurizer, const FeatureMatrix& x,
                                 const PredictOptions& options) {
  if (!(featurizer == bundle.features)) {
    throw Error(ErrorCode::kFingerprintMismatch,
                "model expects features " + hex64(bundle.features.hash) + ", featurizer is " +
                    hex64(featurizer.hash));
  }
  return predict(bundle.model, x, options);
}

}  // namespace phirisk
