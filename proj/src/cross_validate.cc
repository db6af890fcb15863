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
#include "phirisk/error.h"
#include "phirisk/eval.h"
#include "phirisk/parallel.h"

namespace phirisk {
namespace {

class BowFeatures : public FittedFeatures {
 public:
  explicit BowFeatures(Vocabulary vocab) : vocab_(std::move(vocab)) {}
  FeatureMatrix transform(std::span<const SentenceRecord> records) const override {
    return vectorize_bow(records, vocab_);
  }
  FeatureFingerprint fingerprint() const override { return fingerprint_of(vocab_); }

 private:
  Vocabulary vocab_;
};

class EmbeddingFeatures : public FittedFeatures {
 public:
  explicit EmbeddingFeatures(const EmbeddingTable* table) : table_(table) {}
  FeatureMatrix transform(std::span<const SentenceRecord> records) const override {
    return vectorize_embeddings(records, *table_);
  }
  FeatureFingerprint fingerprint() const override { return fingerprint_of(*table_); }

 private:
  const EmbeddingTable* table_;
};

class ModelPredictor : public Predictor {
 public:
  ModelPredictor(TrainedModel model, PredictOptions options)
      : model_(std::move(model)), options_(options) {}
  std::vector<int> predict(const FeatureMatrix& x) const override {
    return phirisk::predict(model_, x, options_);
  }
  std::vector<std::string> warnings() const override { return training_warnings(model_); }

 private:
  TrainedModel model_;
  PredictOptions options_;
};

std::vector<SentenceRecord> gather(std::span<const SentenceRecord> records,
                                   std::span<const std::size_t> indices) {
  std::vector<SentenceRecord> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(records[i]);
  return out;
}

struct FoldOutcome {
  FoldResult result;
  std::vector<std::string> warnings;
};

}  // namespace

std::unique_ptr<FittedFeatures> BowFeaturizer::fit(std::span<const SentenceRecord> train) const {
  return std::make_unique<BowFeatures>(build_vocabulary(train));
}

std::unique_ptr<FittedFeatures> EmbeddingFeaturizer::fit(
    std::span<const SentenceRecord> /*train*/) const {
  return std::make_unique<EmbeddingFeatures>(table_);
}

std::map<std::string, std::string> ModelLearner::hyperparameters() const {
  auto out = phirisk::hyperparameters(kind_, train_);
  if (predict_.tie_high) out["tie_high"] = "true";
  return out;
}

std::unique_ptr<Predictor> ModelLearner::train(const FeatureMatrix& x,
                                               std::span<const int> y) const {
  return std::make_unique<ModelPredictor>(train_model(kind_, x, y, train_), predict_);
}

EvalReport cross_validate(std::span<const SentenceRecord> records, const Featurizer& featurizer,
                          const Learner& learner, const FoldAssignment& folds) {
  if (folds.fold.size() != records.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "fold assignment covers " + std::to_string(folds.fold.size()) + " of " +
                    std::to_string(records.size()) + " records");
  }
  std::vector<FoldOutcome> outcomes(folds.k);
  parallel_for(folds.k, [&](std::size_t f) {
    try {
      auto train_idx = folds.train_indices(f);
      auto test_idx = folds.test_indices(f);
      auto train = gather(records, train_idx);
      auto test = gather(records, test_idx);
      auto fitted = featurizer.fit(train);
      FeatureMatrix x_train = fitted->transform(train);
      FeatureMatrix x_test = fitted->transform(test);
      std::vector<int> y_train, y_test;
      for (const auto& r : train) y_train.push_back(r.label);
      for (const auto& r : test) y_test.push_back(r.label);

      auto predictor = learner.train(x_train, y_train);
      auto scored = compute_metrics(y_test, predictor->predict(x_test));
      outcomes[f].result = {scored.metrics, scored.matrix, train.size(), test.size()};
      for (const auto& w : predictor->warnings()) {
        outcomes[f].warnings.push_back("fold " + std::to_string(f) + ": " + w);
      }
    } catch (const Error& e) {
      throw Error(e.code(), "fold " + std::to_string(f) + ": " + e.detail());
    }
  });

  EvalReport report;
  report.meta.seed = folds.seed;
  report.meta.features = featurizer.name();
  report.meta.model = learner.name();
  report.meta.k = folds.k;
  report.meta.strategy = folds.strategy;
  report.meta.hyperparameters = learner.hyperparameters();
  for (auto& outcome : outcomes) {
    const FoldResult& r = outcome.result;
    report.folds.push_back(r);
    report.pooled += r.matrix;
    report.mean.precision += r.metrics.precision;
    report.mean.recall += r.metrics.recall;
    report.mean.f1 += r.metrics.f1;
    report.mean.precision_undefined |= r.metrics.precision_undefined;
    report.mean.recall_undefined |= r.metrics.recall_undefined;
    for (auto& w : outcome.warnings) report.warnings.push_back(std::move(w));
  }
  if (folds.k > 0) {
    double k = static_cast<double>(folds.k);
    report.mean.precision /= k;
    report.mean.recall /= k;
    report.mean.f1 /= k;
  }
  return report;
}

EvalReport cross_validate(std::span<const SentenceRecord> records, FeatureKind features,
                          ModelKind model, const CvOptions& options) {
  std::unique_ptr<Featurizer> featurizer;
  if (features == FeatureKind::kEmbedding) {
    if (options.embeddings == nullptr) {
      throw Error(ErrorCode::kInvalidConfig, "embedding features need an embedding table");
    }
    featurizer = std::make_unique<EmbeddingFeaturizer>(*options.embeddings);
  } else {
    featurizer = std::make_unique<BowFeaturizer>();
  }
  TrainOptions train = options.train;
  train.set_seed(options.seed);
  ModelLearner learner(model, train, options.predict);
  FoldAssignment folds = make_folds(records, options.k, options.seed, options.strategy);
  return cross_validate(records, *featurizer, learner, folds);
}

}  // namespace phirisk
