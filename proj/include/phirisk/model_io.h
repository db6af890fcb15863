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
#ifndef PHIRISK_MODEL_IO_H_
#define PHIRISK_MODEL_IO_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "phirisk/features.h"
#include "phirisk/models.h"

namespace phirisk {

// Identifies the featurizer a model was trained against.
struct FeatureFingerprint {
  FeatureKind kind = FeatureKind::kBow;
  std::uint64_t hash = 0;
  std::size_t width = 0;

  bool operator==(const FeatureFingerprint&) const = default;
};

FeatureFingerprint fingerprint_of(const Vocabulary& vocab);
FeatureFingerprint fingerprint_of(const EmbeddingTable& table);

struct ModelBundle {
  TrainedModel model;
  FeatureFingerprint features;
  std::uint64_t seed = 0;
};

inline constexpr int kModelFormatVersion = 1;

// Versioned JSON container: format tag, version, model kind,
// hyperparameters, feature fingerprint and learned parameters.
std::string save_model_json(const ModelBundle& bundle);

// Throws kUnknownFormat for foreign or newer containers and kMalformedRecord
// for missing fields.
ModelBundle load_model_json(std::string_view json);

// Scores x only when featurizer matches the bundle's fingerprint; throws
// kFingerprintMismatch otherwise.
std::vector<int> predict_checked(const ModelBundle& bundle,
                                 const FeatureFingerprint& featurizer,
                                 const FeatureMatrix& x,
                                 const PredictOptions& options = {});

}  // namespace phirisk

#endif  // PHIRISK_MODEL_IO_H_
