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

// Scenario files: the JSON description of an event, a scoring rule, a
// mechanism, players, an optional coalition and an optional simulation.
//
//   {
//     "schema_version": 1,
//     "event": {"m": 2, "labels": ["rain", "dry"]},
//     "rule": {"kind": "quadratic", "a": [0, 0], "b": 1.0},
//     "mechanism": "competitive",
//     "players": [{"belief": [0.2, 0.8], "wager": 1, "report": [0.5, 0.5]}],
//     "coalition": {"members": [1, 2]},
//     "simulation": {"mode": "sweep", "sampler": {"kind": "beta", ...}, ...}
//   }
//
// Player, outcome and coalition indices are 1-based in files and messages.

#ifndef COALITION_FORGE_SCENARIO_HPP_
#define COALITION_FORGE_SCENARIO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "coalition_forge/arbitrage.hpp"
#include "coalition_forge/market_sim.hpp"
#include "coalition_forge/mechanisms.hpp"
#include "coalition_forge/scoring_rules.hpp"

namespace coalition_forge {

inline constexpr int kScenarioSchemaVersion = 1;

enum class SimulationMode { kSweep, kIntermediary, kMarketSession };

struct SimulationSpec {
  SimulationMode mode = SimulationMode::kSweep;
  std::optional<BeliefSampler> sampler;
  std::size_t n = 100;
  std::vector<double> fractions;
  std::size_t trials = 2000;
  std::uint64_t seed = 0;
  std::optional<Forecast> truth;
  // Market sessions: report the truth instead of q.
  bool coalition_truthful = false;

  bool operator==(const SimulationSpec&) const = default;
};

struct Scenario {
  int schema_version = kScenarioSchemaVersion;
  std::size_t m = 2;
  std::vector<std::string> labels;
  MechanismSpec mechanism;  // carries the scoring rule
  std::vector<Player> players;
  std::optional<Coalition> coalition;
  // Identical report to evaluate instead of the constructed one.
  std::optional<Forecast> coalition_report;
  std::optional<SimulationSpec> simulation;

  const ScoringRule& rule() const { return mechanism.rule; }

  bool operator==(const Scenario&) const = default;
};

// Throws Error(kScenarioInvalid) with a field path, e.g.
// "players[2].belief: entries sum to 1.1, not 1".
Scenario parse_scenario(const nlohmann::json& doc);
Scenario parse_scenario_text(const std::string& text);
Scenario load_scenario(const std::string& path);

// Canonical form: object keys sorted, defaults written out, mechanism in
// object form. parse_scenario(scenario_to_json(s)) == s.
nlohmann::json scenario_to_json(const Scenario& scenario);
std::string canonical_json(const Scenario& scenario);

// "fnv1a64:<16 hex digits>" over the canonical JSON, so key order and
// whitespace in the source file do not matter.
std::string scenario_digest(const Scenario& scenario);

nlohmann::json rule_to_json(const ScoringRule& rule);
ScoringRule rule_from_json(const nlohmann::json& doc, const std::string& path);

}  // namespace coalition_forge

#endif  // COALITION_FORGE_SCENARIO_HPP_
