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

// The score | arbitrage | verify | simulate commands. Each renders its
// result as an aligned table, CSV, or a JSON result envelope and returns
// the process exit code alongside the text.

#ifndef COALITION_FORGE_COMMANDS_HPP_
#define COALITION_FORGE_COMMANDS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "coalition_forge/scenario.hpp"

namespace coalition_forge {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitValidation = 2,
  kExitNoArbitrage = 3,
};

enum class OutputFormat { kTable, kCsv, kJson };

std::optional<OutputFormat> parse_output_format(std::string_view name);

struct CommandOptions {
  std::optional<std::size_t> outcome;  // 1-based; all outcomes when absent
  OutputFormat format = OutputFormat::kTable;
  std::size_t resolution = 50;
  std::optional<std::uint64_t> seed;  // overrides simulation.seed
  // simulate: write CSV and JSON here instead of printing the table.
  std::optional<std::string> out_path;
};

struct CommandOutput {
  int exit_code = kExitOk;
  std::string text;   // for stdout
  std::string error;  // for stderr; set when exit_code is kExitValidation
};

CommandOutput run_score(const Scenario& scenario, const CommandOptions& opts);
CommandOutput run_arbitrage(const Scenario& scenario,
                            const CommandOptions& opts);
CommandOutput run_verify(const Scenario& scenario, const CommandOptions& opts);
CommandOutput run_simulate(const Scenario& scenario,
                           const CommandOptions& opts);

// Dispatches by name and turns library errors into kExitValidation.
CommandOutput run_command(std::string_view command, const Scenario& scenario,
                          const CommandOptions& opts);

// Shortest decimal that round-trips the double.
std::string format_double(double v);

}  // namespace coalition_forge

#endif  // COALITION_FORGE_COMMANDS_HPP_
