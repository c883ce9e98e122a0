// Copyright 2026 The Authors.
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

namespace vecsum {

enum class ErrorKind {
  kParse,
  kIo,
  kMissingReference,
  kDimensionMismatch,
  kEmptyEmbedding,
  kZeroVector,
  kDegenerateSample,
  kIncompleteVectors,
  kDegenerateFit,
  kNoFeasibleSummary,
  kDegenerateDistribution,
  kSingularDesign,
  kIncompleteResults,
  kConfig,
};

inline std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return "ParseError";
    case ErrorKind::kIo: return "IoError";
    case ErrorKind::kMissingReference: return "MissingReference";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kEmptyEmbedding: return "EmptyEmbedding";
    case ErrorKind::kZeroVector: return "ZeroVector";
    case ErrorKind::kDegenerateSample: return "DegenerateSample";
    case ErrorKind::kIncompleteVectors: return "IncompleteVectors";
    case ErrorKind::kDegenerateFit: return "DegenerateFit";
    case ErrorKind::kNoFeasibleSummary: return "NoFeasibleSummary";
    case ErrorKind::kDegenerateDistribution: return "DegenerateDistribution";
    case ErrorKind::kSingularDesign: return "SingularDesign";
    case ErrorKind::kIncompleteResults: return "IncompleteResults";
    case ErrorKind::kConfig: return "ConfigError";
  }
  return "Error";
}

// Every failure raised by the library carries a kind so callers (the
// experiment runner in particular) can report it per cell and move on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace vecsum
