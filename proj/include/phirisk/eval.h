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
#ifndef PHIRISK_EVAL_H_
#define PHIRISK_EVAL_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phirisk/features.h"
#include "phirisk/model_io.h"
#include "phirisk/models.h"
#include "phirisk/segment.h"

namespace phirisk {

// ---------------------------------------------------------------------------
// Folds

enum class FoldStrategy {
  kStratifiedSentence,
  kDocumentGrouped,
};

std::string_view fold_strategy_name(FoldStrategy strategy);
std::optional<FoldStrategy> parse_fold_strategy(std::string_view name);

struct FoldAssignment {
  std::size_t k = 0;
  std::vector<std::size_t> fold;  // fold index per sample
  std::uint64_t seed = 0;
  FoldStrategy strategy = FoldStrategy::kStratifiedSentence;

  std::vector<std::size_t> test_indices(std::size_t f) const;
  std::vector<std::size_t> train_indices(std::size_t f) const;
  std::vector<std::size_t> sizes() const;

  bool operator==(const FoldAssignment&) const = default;
};

// Each class is shuffled with a seeded generator and dealt round-robin; the
// dealing position carries over from one class to the next so total fold
// sizes also differ by at most one. Throws kTooFewSamples when k < 2 or a
// class has fewer than k members.
FoldAssignment stratified_kfold(std::span<const int> labels, std::size_t k = 5,
                                std::uint64_t seed = 42);

// Keeps every group in one fold. Groups are shuffled, then placed largest
// first into the currently smallest fold. Throws kTooFewSamples with fewer
// than k groups.
FoldAssignment group_kfold(std::span<const std::string> groups, std::size_t k = 5,
                           std::uint64_t seed = 42);

FoldAssignment make_folds(std::span<const SentenceRecord> records, std::size_t k,
                          std::uint64_t seed, FoldStrategy strategy);

// ---------------------------------------------------------------------------
// Metrics

struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const { return tp + fp + fn + tn; }
  ConfusionMatrix& operator+=(const ConfusionMatrix& other);

  bool operator==(const ConfusionMatrix&) const = default;
};

struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  // Set when the corresponding denominator was zero and 0 was substituted.
  bool precision_undefined = false;
  bool recall_undefined = false;

  bool operator==(const Metrics&) const = default;
};

Metrics metrics_from(const ConfusionMatrix& m);

struct MetricsResult {
  Metrics metrics;
  ConfusionMatrix matrix;
};

// Positive class is 1 (high risk). Throws kLengthMismatch, or
// kMalformedRecord for labels outside {0, 1}.
MetricsResult compute_metrics(std::span<const int> y_true, std::span<const int> y_pred);

// ---------------------------------------------------------------------------
// Pluggable pipeline stages

class FittedFeatures {
 public:
  virtual ~FittedFeatures() = default;
  virtual FeatureMatrix transform(std::span<const SentenceRecord> records) const = 0;
  virtual FeatureFingerprint fingerprint() const = 0;
};

class Featurizer {
 public:
  virtual ~Featurizer() = default;
  virtual std::string name() const = 0;
  // Sees only the training records of one fold. May be called concurrently.
  virtual std::unique_ptr<FittedFeatures> fit(std::span<const SentenceRecord> train) const = 0;
};

class Predictor {
 public:
  virtual ~Predictor() = default;
  virtual std::vector<int> predict(const FeatureMatrix& x) const = 0;
  virtual std::vector<std::string> warnings() const { return {}; }
};

class Learner {
 public:
  virtual ~Learner() = default;
  virtual std::string name() const = 0;
  virtual std::map<std::string, std::string> hyperparameters() const { return {}; }
  // May be called concurrently.
  virtual std::unique_ptr<Predictor> train(const FeatureMatrix& x,
                                           std::span<const int> y) const = 0;
};

class BowFeaturizer : public Featurizer {
 public:
  std::string name() const override { return "bow"; }
  std::unique_ptr<FittedFeatures> fit(std::span<const SentenceRecord> train) const override;
};

// The table must outlive the featurizer.
class EmbeddingFeaturizer : public Featurizer {
 public:
  explicit EmbeddingFeaturizer(const EmbeddingTable& table) : table_(&table) {}
  std::string name() const override { return "w2v"; }
  std::unique_ptr<FittedFeatures> fit(std::span<const SentenceRecord> train) const override;

 private:
  const EmbeddingTable* table_;
};

class ModelLearner : public Learner {
 public:
  ModelLearner(ModelKind kind, TrainOptions train = {}, PredictOptions predict = {})
      : kind_(kind), train_(train), predict_(predict) {}

  std::string name() const override { return std::string(model_kind_name(kind_)); }
  std::map<std::string, std::string> hyperparameters() const override;
  std::unique_ptr<Predictor> train(const FeatureMatrix& x,
                                   std::span<const int> y) const override;

 private:
  ModelKind kind_;
  TrainOptions train_;
  PredictOptions predict_;
};

// ---------------------------------------------------------------------------
// Cross-validation

struct RunMetadata {
  std::uint64_t seed = 42;
  std::string features;
  std::string model;
  std::size_t k = 0;
  FoldStrategy strategy = FoldStrategy::kStratifiedSentence;
  std::map<std::string, std::string> hyperparameters;

  bool operator==(const RunMetadata&) const = default;
};

struct FoldResult {
  Metrics metrics;
  ConfusionMatrix matrix;
  std::size_t train_size = 0;
  std::size_t test_size = 0;

  bool operator==(const FoldResult&) const = default;
};

struct EvalReport {
  RunMetadata meta;
  std::vector<FoldResult> folds;
  Metrics mean;            // arithmetic mean of per-fold values
  ConfusionMatrix pooled;  // sum of per-fold matrices
  std::vector<std::string> warnings;

  bool operator==(const EvalReport&) const = default;
};

EvalReport cross_validate(std::span<const SentenceRecord> records, const Featurizer& featurizer,
                          const Learner& learner, const FoldAssignment& folds);

struct CvOptions {
  std::size_t k = 5;
  std::uint64_t seed = 42;
  FoldStrategy strategy = FoldStrategy::kStratifiedSentence;
  TrainOptions train;
  PredictOptions predict;
  const EmbeddingTable* embeddings = nullptr;  // required for kEmbedding
};

// Seeds the learners from options.seed. Throws kInvalidConfig when
// embeddings are needed but absent.
EvalReport cross_validate(std::span<const SentenceRecord> records, FeatureKind features,
                          ModelKind model, const CvOptions& options = {});

// ---------------------------------------------------------------------------
// Reports

// Formats:
//   csv       mean table (features,model,precision,recall,f1), blank line,
//             pooled confusion rows (features,model,tp,fp,fn,tn)
//   folds     features,model,fold,precision,recall,f1 per fold plus a mean row
//   confusion pooled confusion rows only
//   table     aligned text with a 2x2 matrix per run; rows are the true label
//             and columns the prediction, high risk first
//   json      single report as an object, several as an array
// Throws kUnknownFormat for anything else.
std::string render_report(std::span<const EvalReport> reports, std::string_view format);
std::string render_report(const EvalReport& report, std::string_view format);

// Parses the json rendering of one report or an array of reports.
std::vector<EvalReport> parse_reports_json(std::string_view json);

}  // namespace phirisk

#endif  // PHIRISK_EVAL_H_
