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
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "phirisk/error.h"
#include "phirisk/eval.h"
#include "phirisk/text.h"

namespace phirisk {
namespace {

using nlohmann::ordered_json;

ordered_json metrics_json(const Metrics& m) {
  return {{"precision", m.precision},
          {"recall", m.recall},
          {"f1", m.f1},
          {"precision_undefined", m.precision_undefined},
          {"recall_undefined", m.recall_undefined}};
}

Metrics metrics_from_json(const ordered_json& j) {
  return {j.at("precision").get<double>(), j.at("recall").get<double>(),
          j.at("f1").get<double>(), j.at("precision_undefined").get<bool>(),
          j.at("recall_undefined").get<bool>()};
}

ordered_json matrix_json(const ConfusionMatrix& m) {
  return {{"tp", m.tp}, {"fp", m.fp}, {"fn", m.fn}, {"tn", m.tn}};
}

ConfusionMatrix matrix_from_json(const ordered_json& j) {
  return {j.at("tp").get<std::size_t>(), j.at("fp").get<std::size_t>(),
          j.at("fn").get<std::size_t>(), j.at("tn").get<std::size_t>()};
}

ordered_json report_json(const EvalReport& r) {
  ordered_json hyper = ordered_json::object();
  for (const auto& [key, value] : r.meta.hyperparameters) hyper[key] = value;
  ordered_json folds = ordered_json::array();
  for (const FoldResult& f : r.folds) {
    folds.push_back({{"metrics", metrics_json(f.metrics)},
                     {"confusion", matrix_json(f.matrix)},
                     {"train_size", f.train_size},
                     {"test_size", f.test_size}});
  }
  return {{"meta",
           {{"seed", r.meta.seed},
            {"features", r.meta.features},
            {"model", r.meta.model},
            {"k", r.meta.k},
            {"strategy", fold_strategy_name(r.meta.strategy)},
            {"hyperparameters", hyper}}},
          {"mean", metrics_json(r.mean)},
          {"pooled", matrix_json(r.pooled)},
          {"folds", folds},
          {"warnings", r.warnings}};
}

EvalReport report_from_json(const ordered_json& j) {
  EvalReport r;
  const auto& meta = j.at("meta");
  r.meta.seed = meta.at("seed").get<std::uint64_t>();
  r.meta.features = meta.at("features").get<std::string>();
  r.meta.model = meta.at("model").get<std::string>();
  r.meta.k = meta.at("k").get<std::size_t>();
  auto strategy = parse_fold_strategy(meta.at("strategy").get<std::string>());
  if (!strategy) throw Error(ErrorCode::kMalformedRecord, "unknown fold strategy");
  r.meta.strategy = *strategy;
  for (const auto& [key, value] : meta.at("hyperparameters").items()) {
    r.meta.hyperparameters[key] = value.get<std::string>();
  }
  r.mean = metrics_from_json(j.at("mean"));
  r.pooled = matrix_from_json(j.at("pooled"));
  for (const auto& f : j.at("folds")) {
    r.folds.push_back({metrics_from_json(f.at("metrics")), matrix_from_json(f.at("confusion")),
                       f.at("train_size").get<std::size_t>(),
                       f.at("test_size").get<std::size_t>()});
  }
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  return r;
}

std::string metric_row(const Metrics& m) {
  return format_double(m.precision) + "," + format_double(m.recall) + "," + format_double(m.f1);
}

std::string confusion_rows(std::span<const EvalReport> reports) {
  std::string out = "features,model,tp,fp,fn,tn\n";
  for (const auto& r : reports) {
    const auto& m = r.pooled;
    out += r.meta.features + "," + r.meta.model + "," + std::to_string(m.tp) + "," +
           std::to_string(m.fp) + "," + std::to_string(m.fn) + "," + std::to_string(m.tn) + "\n";
  }
  return out;
}

std::string render_csv(std::span<const EvalReport> reports) {
  std::string out = "features,model,precision,recall,f1\n";
  for (const auto& r : reports) {
    out += r.meta.features + "," + r.meta.model + "," + metric_row(r.mean) + "\n";
  }
  return out + "\n" + confusion_rows(reports);
}

std::string render_folds(std::span<const EvalReport> reports) {
  std::string out = "features,model,fold,precision,recall,f1\n";
  for (const auto& r : reports) {
    std::string prefix = r.meta.features + "," + r.meta.model + ",";
    for (std::size_t f = 0; f < r.folds.size(); ++f) {
      out += prefix + std::to_string(f) + "," + metric_row(r.folds[f].metrics) + "\n";
    }
    out += prefix + "mean," + metric_row(r.mean) + "\n";
  }
  return out;
}

std::string render_table(std::span<const EvalReport> reports) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  bool first = true;
  for (const auto& r : reports) {
    if (!first) out << "\n";
    first = false;
    const auto& m = r.pooled;
    out << r.meta.features << " + " << r.meta.model << "  (seed " << r.meta.seed << ", k "
        << r.meta.k << ", " << fold_strategy_name(r.meta.strategy) << ")\n";
    out << "precision " << r.mean.precision << "  recall " << r.mean.recall << "  f1 "
        << r.mean.f1 << "\n";
    out << std::setw(12) << "" << std::setw(12) << "pred high" << std::setw(12) << "pred low"
        << "\n";
    out << std::setw(12) << std::left << "true high" << std::right << std::setw(12) << m.tp
        << std::setw(12) << m.fn << "\n";
    out << std::setw(12) << std::left << "true low" << std::right << std::setw(12) << m.fp
        << std::setw(12) << m.tn << "\n";
  }
  return out.str();
}

}  // namespace

std::string render_report(std::span<const EvalReport> reports, std::string_view format) {
  if (format == "csv") return render_csv(reports);
  if (format == "folds") return render_folds(reports);
  if (format == "confusion") return confusion_rows(reports);
  if (format == "table") return render_table(reports);
  if (format == "json") {
    ordered_json j;
    if (reports.size() == 1) {
      j = report_json(reports[0]);
    } else {
      j = ordered_json::array();
      for (const auto& r : reports) j.push_back(report_json(r));
    }
    return j.dump(2) + "\n";
  }
  throw Error(ErrorCode::kUnknownFormat, "unknown report format '" + std::string(format) + "'");
}

std::string render_report(const EvalReport& report, std::string_view format) {
  return render_report(std::span<const EvalReport>(&report, 1), format);
}

std::vector<EvalReport> parse_reports_json(std::string_view text) {
  try {
    ordered_json j = ordered_json::parse(text);
    std::vector<EvalReport> out;
    if (j.is_array()) {
      for (const auto& item : j) out.push_back(report_from_json(item));
    } else {
      out.push_back(report_from_json(j));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedRecord, std::string("bad report JSON: ") + e.what());
  }
}

}  // namespace phirisk
