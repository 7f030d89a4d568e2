// Copyright 2026 The Coalition Forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "coalition_forge/error.hpp"

namespace coalition_forge {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNegativeEntry: return "NegativeEntry";
    case ErrorCode::kSumOutOfTolerance: return "SumOutOfTolerance";
    case ErrorCode::kTooFewStates: return "TooFewStates";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kNonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kOutcomeOutOfRange: return "OutcomeOutOfRange";
    case ErrorCode::kLogOfZero: return "LogOfZero";
    case ErrorCode::kOutOfDomain: return "OutOfDomain";
    case ErrorCode::kUnboundedRule: return "UnboundedRule";
    case ErrorCode::kInvalidRule: return "InvalidRule";
    case ErrorCode::kUnsupportedRule: return "UnsupportedRule";
    case ErrorCode::kDegenerateBelief: return "DegenerateBelief";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kNonMonotoneGenerator: return "NonMonotoneGenerator";
    case ErrorCode::kInvalidCoalition: return "InvalidCoalition";
    case ErrorCode::kMissingReport: return "MissingReport";
    case ErrorCode::kSinglePlayer: return "SinglePlayer";
    case ErrorCode::kMissingPrior: return "MissingPrior";
    case ErrorCode::kInvalidPlayer: return "InvalidPlayer";
    case ErrorCode::kUnsupportedMechanism: return "UnsupportedMechanism";
    case ErrorCode::kFractionOutOfRange: return "FractionOutOfRange";
    case ErrorCode::kInvalidSampler: return "InvalidSampler";
    case ErrorCode::kScenarioInvalid: return "ScenarioInvalid";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace coalition_forge
