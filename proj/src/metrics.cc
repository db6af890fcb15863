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

namespace phirisk {

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
  tp += other.tp;
  fp += other.fp;
  fn += other.fn;
  tn += other.tn;
  return *this;
}

Metrics metrics_from(const ConfusionMatrix& m) {
  Metrics out;
  if (m.tp + m.fp == 0) {
    out.precision_undefined = true;
  } else {
    out.precision = static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fp);
  }
  if (m.tp + m.fn == 0) {
    out.recall_undefined = true;
  } else {
    out.recall = static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fn);
  }
  double sum = out.precision + out.recall;
  out.f1 = sum > 0.0 ? 2.0 * out.precision * out.recall / sum : 0.0;
  return out;
}

MetricsResult compute_metrics(std::span<const int> y_true, std::span<const int> y_pred) {
  if (y_true.size() != y_pred.size()) {
    throw Error(ErrorCode::kLengthMismatch, std::to_string(y_true.size()) + " labels vs " +
                                                std::to_string(y_pred.size()) + " predictions");
  }
  ConfusionMatrix m;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    int t = y_true[i];
    int p = y_pred[i];
    if ((t != 0 && t != 1) || (p != 0 && p != 1)) {
      throw Error(ErrorCode::kMalformedRecord, "label outside {0, 1} at " + std::to_string(i));
    }
    if (t == 1) {
      ++(p == 1 ? m.tp : m.fn);
    } else {
      ++(p == 1 ? m.fp : m.tn);
    }
  }
  return {metrics_from(m), m};
}

}  // namespace phirisk
