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

// Payment mechanisms built on a scoring rule S.
//
//   traditional          Pi_i = w_i S(r_i, E_j)
//   self-financed        Pi_i = w_i S(r_i, E_j) - (w_i / w_N) sum_k w_k S(r_k, E_j)
//   competitive          (equal wagers: Kilgour-Gerchak; S in [0, 1]: Lambert)
//   market scoring       Pi_i = S(r_i, E_j) - S(r_{i-1}, E_j), r_0 the prior
//
// Coalition surplus compares the members' total payment when they submit
// coordinated reports against the total when they report their beliefs,
// with every outsider's report held fixed.

#ifndef COALITION_FORGE_MECHANISMS_HPP_
#define COALITION_FORGE_MECHANISMS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coalition_forge/arbitrage.hpp"
#include "coalition_forge/scoring_rules.hpp"
#include "coalition_forge/simplex.hpp"

namespace coalition_forge {

enum class MechanismKind { kTraditional, kSelfFinancedCompetitive, kMarketScoring };

// Named configurations of the self-financed competitive mechanism.
enum class MechanismPreset { kNone, kKilgourGerchak, kLambert };

struct MechanismSpec {
  MechanismKind kind = MechanismKind::kTraditional;
  ScoringRule rule = ScoringRule::quadratic();
  MechanismPreset preset = MechanismPreset::kNone;
  // Market scoring only: the report the first trader is paid against.
  // Uniform when absent.
  std::optional<Forecast> market_prior;
  // Market scoring only: 0-based player indices in reporting order. The
  // natural order 0..n-1 when absent.
  std::optional<std::vector<std::size_t>> ordering;

  // The rule payments are computed with: the Lambert preset rescales the
  // rule onto [0, 1].
  ScoringRule effective_rule(std::size_t m) const;
  Forecast prior_or_uniform(std::size_t m) const;
  std::vector<std::size_t> ordering_or_natural(std::size_t n) const;

  bool operator==(const MechanismSpec&) const = default;
};

std::string mechanism_name(const MechanismSpec& spec);

// n x m matrix of payments; entry (i, j) is player i's payment when E_j
// occurs.
class PaymentTable {
 public:
  PaymentTable(std::size_t players, std::size_t outcomes)
      : n_(players), m_(outcomes), data_(players * outcomes, 0.0) {}

  std::size_t players() const noexcept { return n_; }
  std::size_t outcomes() const noexcept { return m_; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * m_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * m_ + j]; }

  std::vector<double> column(std::size_t j) const;
  double column_sum(std::size_t j) const;

 private:
  std::size_t n_;
  std::size_t m_;
  std::vector<double> data_;
};

// Payment columns for a single outcome. Every player must carry a report
// (kMissingReport names the first that does not).
std::vector<double> traditional_payments(const ScoringRule& rule,
                                         std::span<const Player> players,
                                         OutcomeIndex outcome);
std::vector<double> competitive_payments(const ScoringRule& rule,
                                         std::span<const Player> players,
                                         OutcomeIndex outcome);
// Entry k pays reports[k] against reports[k - 1]; reports[0] against prior.
std::vector<double> market_scoring_payments(
    const ScoringRule& rule, std::span<const Forecast> reports,
    const std::optional<Forecast>& prior, OutcomeIndex outcome);

// Full table under a mechanism, indexed by player (market payments follow
// the mechanism's ordering but are stored by player index).
PaymentTable payment_table(const MechanismSpec& spec,
                           std::span<const Player> players);

// Sum of a market-scoring payment column; telescopes to
// S(r_last) - S(r_0).
double market_total(const ScoringRule& rule, std::span<const Forecast> reports,
                    const Forecast& prior, OutcomeIndex outcome);

struct CompetitiveSurplus {
  double surplus = 0.0;
  // The coalition holds every wager, so the surplus is identically zero.
  bool coalition_is_everyone = false;
};

// Coordinated minus truthful coalition total under the self-financed
// competitive mechanism. `coordinated[k]` is the report of the k-th member.
CompetitiveSurplus coalition_surplus_competitive(
    const ScoringRule& rule, std::span<const Player> players,
    const Coalition& coalition, std::span<const Forecast> coordinated,
    OutcomeIndex outcome);

// Same comparison under the traditional contract.
double coalition_surplus_traditional(const ScoringRule& rule,
                                     std::span<const Player> players,
                                     const Coalition& coalition,
                                     std::span<const Forecast> coordinated,
                                     OutcomeIndex outcome);

struct MarketSurplus {
  double surplus = 0.0;
  // Some member reports directly after another member, so the guarantee
  // that the surplus matches the traditional one no longer holds.
  bool ordering_violation = false;
};

// True if some coalition member immediately follows another in `ordering`.
bool ordering_violates(std::span<const std::size_t> ordering,
                       const Coalition& coalition);

MarketSurplus coalition_surplus_market(const ScoringRule& rule,
                                       std::span<const Player> players,
                                       std::span<const std::size_t> ordering,
                                       const Coalition& coalition,
                                       std::span<const Forecast> coordinated,
                                       const Forecast& prior,
                                       OutcomeIndex outcome);

// Coordinated minus truthful coalition total under any mechanism, one
// entry per outcome.
std::vector<double> coalition_surplus(const MechanismSpec& spec,
                                      std::span<const Player> players,
                                      const Coalition& coalition,
                                      std::span<const Forecast> coordinated);

}  // namespace coalition_forge

#endif  // COALITION_FORGE_MECHANISMS_HPP_
