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

#ifndef COALITION_FORGE_ERROR_HPP_
#define COALITION_FORGE_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace coalition_forge {

// Every failure raised by the library carries one of these codes. The C API
// maps them onto its status values; the CLI maps them onto exit codes.
enum class ErrorCode {
  // Simplex validation.
  kNegativeEntry,
  kSumOutOfTolerance,
  kTooFewStates,
  kLengthMismatch,
  kNonPositiveWeight,
  kDimensionMismatch,
  kOutcomeOutOfRange,
  // Scoring rules.
  kLogOfZero,
  kOutOfDomain,
  kUnboundedRule,
  kInvalidRule,
  // Arbitrage.
  kUnsupportedRule,
  kDegenerateBelief,
  kNoConvergence,
  kNonMonotoneGenerator,
  kInvalidCoalition,
  // Mechanisms.
  kMissingReport,
  kSinglePlayer,
  kMissingPrior,
  kInvalidPlayer,
  kUnsupportedMechanism,
  // Simulation.
  kFractionOutOfRange,
  kInvalidSampler,
  // Scenario / IO.
  kScenarioInvalid,
  kIoError,
  // Precondition violations not covered above.
  kInvalidArgument,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace coalition_forge

#endif  // COALITION_FORGE_ERROR_HPP_
