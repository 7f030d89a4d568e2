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

// Monte Carlo experiments over exchangeable belief populations: expected
// coalition surplus as a function of coalition size, intermediary profit,
// and sequential market sessions.
//
// Results depend only on the inputs and the seed. Trial t draws from
// Rng(seed, t) (see random.hpp) whatever the number of worker threads, and
// aggregation runs in trial order with pairwise summation.

#ifndef COALITION_FORGE_MARKET_SIM_HPP_
#define COALITION_FORGE_MARKET_SIM_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "coalition_forge/arbitrage.hpp"
#include "coalition_forge/mechanisms.hpp"
#include "coalition_forge/random.hpp"
#include "coalition_forge/simplex.hpp"

namespace coalition_forge {

// Binary beliefs (x, 1 - x) with x ~ Beta(alpha, beta).
struct BetaBinary {
  double alpha = 1.0;
  double beta = 1.0;
  bool operator==(const BetaBinary&) const = default;
};

// Beliefs ~ Dirichlet(alpha).
struct DirichletM {
  std::vector<double> alpha;
  bool operator==(const DirichletM&) const = default;
};

// Beliefs drawn from a finite set of points with the given weights.
struct FiniteMixture {
  std::vector<Forecast> points;
  std::vector<double> weights;
  bool operator==(const FiniteMixture&) const = default;
};

class BeliefSampler {
 public:
  using Params = std::variant<BetaBinary, DirichletM, FiniteMixture>;

  // Throws kInvalidSampler unless every parameter is strictly positive
  // (and mixture points share a state count).
  explicit BeliefSampler(Params params);

  const Params& params() const noexcept { return params_; }
  std::size_t states() const;
  Forecast draw(Rng& rng) const;

  bool operator==(const BeliefSampler&) const = default;

 private:
  Params params_;
};

// n players with unit wagers and i.i.d. beliefs from stream 0 of `seed`.
std::vector<Player> sample_population(const BeliefSampler& sampler,
                                      std::size_t n, std::uint64_t seed);

struct SweepConfig {
  MechanismSpec mechanism;
  BeliefSampler sampler;
  std::size_t n = 100;
  std::vector<double> fractions;
  std::size_t trials = 2000;
  std::uint64_t seed = 0;
  // Distribution of the realized outcome; uniform when absent.
  std::optional<Forecast> truth;
  // Worker threads; 0 means COALITION_FORGE_THREADS or the core count.
  std::size_t threads = 0;
};

struct SweepRow {
  double fraction = 0.0;
  std::size_t coalition_size = 0;
  double mean = 0.0;
  double se = 0.0;
  std::size_t trials = 0;
  double mean_per_member = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double argmax_fraction = 0.0;
  // Least-squares fit mean ~ slope * f + intercept.
  double linear_slope = 0.0;
  double linear_intercept = 0.0;
  // Least-squares fit mean ~ a2 f^2 + a1 f + a0; vertex = -a1 / (2 a2).
  double quad_a2 = 0.0;
  double quad_a1 = 0.0;
  double quad_a0 = 0.0;
  std::optional<double> quad_vertex;
};

// For each coalition wager fraction f the coalition is the first round(f n)
// players of a uniformly random permutation; it reports the rule's
// equalizing q while everyone else reports truthfully, and the realized
// surplus at an outcome drawn from the truth distribution is recorded.
// Traditional and self-financed competitive mechanisms are supported.
SweepResult expected_surplus_sweep(const SweepConfig& config);

struct IntermediaryRun {
  std::string scenario_id;
  std::vector<double> profit_by_outcome;
  double min_profit = 0.0;
  bool no_arbitrage = false;  // clients agree; nothing to capture
  Forecast q;
};

// The intermediary submits q for every client and pays each client what
// their truthful report would have earned; its profit per outcome is the
// coalition surplus. The seed only labels the run.
IntermediaryRun intermediary_run(const MechanismSpec& mechanism,
                                 std::span<const Player> players,
                                 const Coalition& coalition,
                                 std::uint64_t seed);

struct MarketSession {
  std::vector<Player> players;
  std::vector<double> surplus_by_outcome;
  bool ordering_violation = false;
};

// Sequential market-scoring session over the players in `ordering` with
// beliefs drawn from the sampler; outsiders report truthfully and the
// coalition reports q (or the truth when `coordinate` is false).
MarketSession market_session(const MechanismSpec& mechanism,
                             std::span<const std::size_t> ordering,
                             const Coalition& coalition,
                             const BeliefSampler& sampler, std::uint64_t seed,
                             bool coordinate = true);

// Worker count from COALITION_FORGE_THREADS, else the core count.
std::size_t default_thread_count();

}  // namespace coalition_forge

#endif  // COALITION_FORGE_MARKET_SIM_HPP_
