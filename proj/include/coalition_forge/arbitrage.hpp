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

// Coalition arbitrage: the identical report q that a coalition of players
// with differing beliefs can submit so that, whatever outcome occurs, their
// combined score beats what they would have earned reporting truthfully.
//
//   rule family              q
//   quadratic                weighted arithmetic mean of member beliefs
//   (generalized) log        normalized weighted geometric mean of p + l
//   spherical                closed form in Y_j = sum w_i p_ij / (w_C |p_i|)
//   binary, generator G      G'(q) = sum (w_i / w_C) G'(p_i), by bisection
//
// At these reports the surplus is the same for every outcome and strictly
// positive whenever the members disagree.

#ifndef COALITION_FORGE_ARBITRAGE_HPP_
#define COALITION_FORGE_ARBITRAGE_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "coalition_forge/scoring_rules.hpp"
#include "coalition_forge/simplex.hpp"

namespace coalition_forge {

class Player {
 public:
  Player(Forecast belief, double wager,
         std::optional<Forecast> report = std::nullopt);

  const Forecast& belief() const noexcept { return belief_; }
  double wager() const noexcept { return wager_; }
  const std::optional<Forecast>& report() const noexcept { return report_; }
  // The submitted report, or the belief when none was given.
  const Forecast& report_or_belief() const noexcept {
    return report_ ? *report_ : belief_;
  }
  Player with_report(Forecast report) const;

  bool operator==(const Player&) const = default;

 private:
  Forecast belief_;
  double wager_;
  std::optional<Forecast> report_;
};

// Ordered set of distinct 0-based player indices.
class Coalition {
 public:
  explicit Coalition(std::vector<std::size_t> members);

  const std::vector<std::size_t>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool contains(std::size_t player) const;

  // Throws kInvalidCoalition if an index is out of range for n players or
  // the coalition has fewer than `min_size` members.
  void check(std::size_t n, std::size_t min_size = 2) const;
  double total_wager(std::span<const Player> players) const;

  bool operator==(const Coalition&) const = default;

 private:
  std::vector<std::size_t> members_;
};

// Members agree iff max_j (max_i p_ij - min_i p_ij) <= 1e-12.
inline constexpr double kAgreementTolerance = 1e-12;
bool members_agree(std::span<const Player> players, const Coalition& coalition);

struct ArbitrageResult {
  Forecast q;
  std::vector<double> surplus_by_outcome;
  bool equalized = false;
  bool agreement = false;
};

struct SphericalAux {
  std::vector<double> y;
  double y_bar = 0.0;
  double sum_sq_dev = 0.0;
  double sum_sq = 0.0;
};

// Identical report for the rule's family (see the table above) together
// with its per-outcome surplus. Throws kUnsupportedRule for rules with no
// construction, kDegenerateBelief for a log score (l = 0) when a member
// assigns some state zero probability.
ArbitrageResult arbitrage_report(const ScoringRule& rule,
                                 std::span<const Player> players,
                                 const Coalition& coalition);

// The q alone; cheaper than arbitrage_report when the surplus is not needed.
Forecast equalizing_report(const ScoringRule& rule,
                           std::span<const Player> players,
                           const Coalition& coalition);

Forecast geometric_mean_report(std::span<const Player> players,
                               const Coalition& coalition, double l);
Forecast spherical_report(std::span<const Player> players,
                          const Coalition& coalition);

// Solves G'(q) = sum (w_i / w_C) G'(p_i) for binary beliefs p_i = P(E1)
// by bisection on [min p_i, max p_i]. Returns the common belief when the
// members agree.
double binary_equalizer(const ConvexGenerator& gen,
                        std::span<const Player> players,
                        const Coalition& coalition, double tol = 1e-12);

// Entry j is sum_{i in C} w_i [S(q, E_j) - S(p_i, E_j)].
std::vector<double> surplus_by_outcome(const ScoringRule& rule,
                                       std::span<const Player> players,
                                       const Coalition& coalition,
                                       const Forecast& q);

// Outcome-independent surplus at the rule's own q, from its closed form.
// Defined for quadratic, logarithmic, generalized logarithmic and
// spherical rules.
double closed_form_surplus(const ScoringRule& rule,
                           std::span<const Player> players,
                           const Coalition& coalition);

SphericalAux spherical_aux(std::span<const Player> players,
                           const Coalition& coalition);

enum class DominanceStatus { kDominates, kTies, kFails };

struct DominanceVerdict {
  DominanceStatus status = DominanceStatus::kFails;
  // First outcome where the coordinated report is not strictly better.
  std::optional<OutcomeIndex> witness;
  std::vector<double> surplus;
  double min_surplus = 0.0;
};

inline constexpr double kDominanceTolerance = 1e-12;

// Recomputes the coalition's coordinated-minus-truthful total from raw
// score calls and classifies it: every entry > 1e-12 dominates, every
// entry within 1e-12 of zero ties, anything else fails.
DominanceVerdict verify_dominance_oracle(const ScoringRule& rule,
                                         std::span<const Player> players,
                                         const Coalition& coalition,
                                         const Forecast& q);

struct GridEqualizer {
  Forecast q;
  double worst_surplus = 0.0;
};

// Brute-force search of the resolution lattice for the identical report
// maximizing the worst-outcome surplus.
GridEqualizer grid_search_equalizer(const ScoringRule& rule,
                                    std::span<const Player> players,
                                    const Coalition& coalition,
                                    std::size_t resolution);

}  // namespace coalition_forge

#endif  // COALITION_FORGE_ARBITRAGE_HPP_
