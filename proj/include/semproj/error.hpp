// Copyright 2026 The semproj Authors.
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace semproj {

enum class ErrorCode {
  kInvalidInput,
  kMissingEmbedding,
  kDimensionMismatch,
  kDegenerateAxis,
  kInsufficientPoints,
  kEmptyAfterSegmentation,
  kTooFewUnits,
  kZeroVariance,
  kLengthMismatch,
  kTooFewObservations,
  kInvalidReliability,
  kUndefinedReliability,
  kEmptySeries,
  kLexiconMissing,
  kCacheMiss,
  kServiceUnreachable,
  kServiceError,
  kModelMismatch,
  kParseError,
  kRangeViolation,
  kDuplicateKey,
  kDanglingReference,
  kInvalidConfig,
  kIo,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return "InvalidInput";
    case ErrorCode::kMissingEmbedding: return "MissingEmbedding";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kDegenerateAxis: return "DegenerateAxis";
    case ErrorCode::kInsufficientPoints: return "InsufficientPoints";
    case ErrorCode::kEmptyAfterSegmentation: return "EmptyAfterSegmentation";
    case ErrorCode::kTooFewUnits: return "TooFewUnits";
    case ErrorCode::kZeroVariance: return "ZeroVariance";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kTooFewObservations: return "TooFewObservations";
    case ErrorCode::kInvalidReliability: return "InvalidReliability";
    case ErrorCode::kUndefinedReliability: return "UndefinedReliability";
    case ErrorCode::kEmptySeries: return "EmptySeries";
    case ErrorCode::kLexiconMissing: return "LexiconMissing";
    case ErrorCode::kCacheMiss: return "CacheMiss";
    case ErrorCode::kServiceUnreachable: return "ServiceUnreachable";
    case ErrorCode::kServiceError: return "ServiceError";
    case ErrorCode::kModelMismatch: return "ModelMismatch";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kRangeViolation: return "RangeViolation";
    case ErrorCode::kDuplicateKey: return "DuplicateKey";
    case ErrorCode::kDanglingReference: return "DanglingReference";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

/// Every failure in the library is reported as an Error carrying a code;
/// the message holds the human-readable context (file/line, offending key).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// Validation failures map to CLI exit code 1, everything else to 2.
  bool is_validation() const noexcept {
    switch (code_) {
      case ErrorCode::kInvalidInput:
      case ErrorCode::kParseError:
      case ErrorCode::kRangeViolation:
      case ErrorCode::kDuplicateKey:
      case ErrorCode::kDanglingReference:
      case ErrorCode::kInvalidConfig:
      case ErrorCode::kInvalidReliability:
      case ErrorCode::kLexiconMissing:
        return true;
      default:
        return false;
    }
  }

 private:
  ErrorCode code_;
};

}  // namespace semproj
