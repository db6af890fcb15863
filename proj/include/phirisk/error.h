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
#ifndef PHIRISK_ERROR_H_
#define PHIRISK_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace phirisk {

enum class ErrorCode {
  kMalformedXml,
  kMissingSection,
  kOffsetOutOfBounds,
  kLiteralMismatch,
  kUnknownCategory,
  kEmptyCorpus,
  kEmptyVocabulary,
  kBadHeader,
  kDimensionMismatch,
  kNonFiniteValue,
  kSingleClassInput,
  kKindMismatch,
  kTooFewSamples,
  kLengthMismatch,
  kUnknownFormat,
  kInvalidConfig,
  kFingerprintMismatch,
  kMalformedRecord,
  kIo,
};

std::string_view error_code_name(ErrorCode code);

// All recoverable failures in the library are reported with this exception.
// The code identifies the failure class; what() carries the human-readable
// detail, already prefixed with the code name.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}

  ErrorCode code() const { return code_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedXml: return "MalformedXml";
    case ErrorCode::kMissingSection: return "MissingSection";
    case ErrorCode::kOffsetOutOfBounds: return "OffsetOutOfBounds";
    case ErrorCode::kLiteralMismatch: return "LiteralMismatch";
    case ErrorCode::kUnknownCategory: return "UnknownCategory";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kEmptyVocabulary: return "EmptyVocabulary";
    case ErrorCode::kBadHeader: return "BadHeader";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNonFiniteValue: return "NonFiniteValue";
    case ErrorCode::kSingleClassInput: return "SingleClassInput";
    case ErrorCode::kKindMismatch: return "KindMismatch";
    case ErrorCode::kTooFewSamples: return "TooFewSamples";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kUnknownFormat: return "UnknownFormat";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kFingerprintMismatch: return "FingerprintMismatch";
    case ErrorCode::kMalformedRecord: return "MalformedRecord";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace phirisk

#endif  // PHIRISK_ERROR_H_
