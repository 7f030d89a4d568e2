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

#include "coalition_forge/arbitrage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "coalition_forge/error.hpp"

namespace coalition_forge {

namespace {

struct Member {
  const Forecast* belief;
  double wager;
  double share;  // w_i / w_C
};

std::vector<Member> collect_members(std::span<const Player> players,
                                    const Coalition& coalition,
                                    std::size_t min_size) {
  coalition.check(players.size(), min_size);
  const double total = coalition.total_wager(players);
  const std::size_t m = players[coalition.members().front()].belief().size();
  std::vector<Member> out;
  out.reserve(coalition.size());
  for (std::size_t i : coalition.members()) {
    const Player& p = players[i];
    if (p.belief().size() != m) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "player " + std::to_string(i + 1) +
                      " belief has a different number of states");
    }
    out.push_back({&p.belief(), p.wager(), p.wager() / total});
  }
  return out;
}

// Small negative values can only come from rounding in formulas whose exact
// result is non-negative.
Forecast to_forecast(std::vector<double> q) {
  for (double& v : q) {
    if (v < 0.0 && v > -1e-12) v = 0.0;
  }
  return Forecast::validate(q);
}

void require_log_support(const std::vector<Member>& members, double l) {
  if (l > 0.0) return;
  for (const Member& mem : members) {
    for (double v : *mem.belief) {
      if (v == 0.0) {
        throw Error(ErrorCode::kDegenerateBelief,
                    "log score with l = 0: a coalition member assigns a "
                    "state zero probability");
      }
    }
  }
}

// L_j = sum_i (w_i / w_C) log(p_ij + l).
std::vector<double> log_geometric_means(const std::vector<Member>& members,
                                        double l) {
  const std::size_t m = members.front().belief->size();
  std::vector<double> out(m, 0.0);
  for (const Member& mem : members) {
    for (std::size_t j = 0; j < m; ++j) {
      out[j] += mem.share * std::log((*mem.belief)[j] + l);
    }
  }
  return out;
}

double log_sum_exp(const std::vector<double>& v) {
  const double top = *std::max_element(v.begin(), v.end());
  double s = 0.0;
  for (double x : v) s += std::exp(x - top);
  return top + std::log(s);
}

bool agree(const std::vector<Member>& members) {
  const std::size_t m = members.front().belief->size();
  for (std::size_t j = 0; j < m; ++j) {
    double lo = (*members.front().belief)[j];
    double hi = lo;
    for (const Member& mem : members) {
      lo = std::min(lo, (*mem.belief)[j]);
      hi = std::max(hi, (*mem.belief)[j]);
    }
    if (hi - lo > kAgreementTolerance) return false;
  }
  return true;
}

SphericalAux spherical_aux_of(const std::vector<Member>& members) {
  const std::size_t m = members.front().belief->size();
  SphericalAux aux;
  aux.y.assign(m, 0.0);
  for (const Member& mem : members) {
    const double norm = two_norm(*mem.belief);
    for (std::size_t j = 0; j < m; ++j) {
      aux.y[j] += mem.share * (*mem.belief)[j] / norm;
    }
  }
  for (double y : aux.y) aux.y_bar += y;
  aux.y_bar /= static_cast<double>(m);
  for (double y : aux.y) {
    aux.sum_sq_dev += (y - aux.y_bar) * (y - aux.y_bar);
    aux.sum_sq += y * y;
  }
  return aux;
}

}  // namespace

// --- Player / Coalition -------------------------------------------------------

Player::Player(Forecast belief, double wager, std::optional<Forecast> report)
    : belief_(std::move(belief)), wager_(wager), report_(std::move(report)) {
  if (!(wager_ > 0.0) || !std::isfinite(wager_)) {
    throw Error(ErrorCode::kInvalidPlayer, "wager must be positive");
  }
  if (report_ && report_->size() != belief_.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "report and belief have different numbers of states");
  }
}

Player Player::with_report(Forecast report) const {
  return Player(belief_, wager_, std::move(report));
}

Coalition::Coalition(std::vector<std::size_t> members)
    : members_(std::move(members)) {
  if (members_.empty()) {
    throw Error(ErrorCode::kInvalidCoalition, "coalition has no members");
  }
  std::vector<std::size_t> sorted = members_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::kInvalidCoalition,
                "coalition lists a player more than once");
  }
}

bool Coalition::contains(std::size_t player) const {
  return std::find(members_.begin(), members_.end(), player) != members_.end();
}

void Coalition::check(std::size_t n, std::size_t min_size) const {
  if (members_.size() < min_size) {
    throw Error(ErrorCode::kInvalidCoalition,
                "coalition needs at least " + std::to_string(min_size) +
                    " members, has " + std::to_string(members_.size()));
  }
  for (std::size_t i : members_) {
    if (i >= n) {
      throw Error(ErrorCode::kInvalidCoalition,
                  "coalition member " + std::to_string(i + 1) +
                      " is not one of the " + std::to_string(n) + " players");
    }
  }
}

double Coalition::total_wager(std::span<const Player> players) const {
  double total = 0.0;
  for (std::size_t i : members_) total += players[i].wager();
  return total;
}

bool members_agree(std::span<const Player> players,
                   const Coalition& coalition) {
  return agree(collect_members(players, coalition, 1));
}

// --- identical reports ---------------------------------------------------------

Forecast geometric_mean_report(std::span<const Player> players,
                               const Coalition& coalition, double l) {
  const auto members = collect_members(players, coalition, 2);
  require_log_support(members, l);
  const std::size_t m = members.front().belief->size();
  std::vector<double> log_g = log_geometric_means(members, l);
  const double log_total = log_sum_exp(log_g);
  const double mass = 1.0 + static_cast<double>(m) * l;
  std::vector<double> q(m);
  for (std::size_t j = 0; j < m; ++j) {
    q[j] = mass * std::exp(log_g[j] - log_total) - l;
  }
  return to_forecast(std::move(q));
}

Forecast spherical_report(std::span<const Player> players,
                          const Coalition& coalition) {
  const auto members = collect_members(players, coalition, 2);
  if (agree(members)) return *members.front().belief;
  const SphericalAux aux = spherical_aux_of(members);
  const double slack = 1.0 - aux.sum_sq_dev;
  // Unreachable in exact arithmetic for disagreeing members.
  if (!(slack > 0.0)) return *members.front().belief;
  const auto m = static_cast<double>(aux.y.size());
  const double denom = std::sqrt(m * slack);
  std::vector<double> q(aux.y.size());
  for (std::size_t j = 0; j < q.size(); ++j) {
    q[j] = 1.0 / m + (aux.y[j] - aux.y_bar) / denom;
  }
  return to_forecast(std::move(q));
}

double binary_equalizer(const ConvexGenerator& gen,
                        std::span<const Player> players,
                        const Coalition& coalition, double tol) {
  const auto members = collect_members(players, coalition, 2);
  if (members.front().belief->size() != 2) {
    throw Error(ErrorCode::kDimensionMismatch,
                "binary equalizer needs 2-state beliefs");
  }
  double lo = 1.0;
  double hi = 0.0;
  double target = 0.0;
  for (const Member& mem : members) {
    const double p = (*mem.belief)[0];
    if (!gen.in_domain(p)) {
      throw Error(ErrorCode::kOutOfDomain,
                  "member belief " + std::to_string(p) +
                      " is outside the generator domain");
    }
    lo = std::min(lo, p);
    hi = std::max(hi, p);
    target += mem.share * gen.g_prime(p);
  }
  if (hi - lo <= kAgreementTolerance) return (*members.front().belief)[0];

  auto residual = [&](double x) { return gen.g_prime(x) - target; };
  lo += 1e-15;
  hi -= 1e-15;
  double f_lo = residual(lo);
  double f_hi = residual(hi);
  if (std::abs(f_lo) <= tol) return lo;
  if (std::abs(f_hi) <= tol) return hi;
  if (!(f_lo < 0.0 && f_hi > 0.0)) {
    throw Error(ErrorCode::kNonMonotoneGenerator,
                "G' does not bracket the target on [min p, max p]; the "
                "generator is not strictly convex there");
  }
  constexpr int kMaxIterations = 200;
  for (int it = 0; it < kMaxIterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = residual(mid);
    if (!std::isfinite(f_mid)) break;
    // Once the bracket is a single ulp the residual cannot shrink further.
    if (std::abs(f_mid) <= tol || mid <= lo || mid >= hi) return mid;
    if (f_mid < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  throw Error(ErrorCode::kNoConvergence,
              "bisection for the equalizing report did not converge");
}

Forecast equalizing_report(const ScoringRule& rule,
                           std::span<const Player> players,
                           const Coalition& coalition) {
  switch (rule.kind()) {
    case RuleKind::kQuadratic: {
      const auto members = collect_members(players, coalition, 2);
      std::vector<Forecast> beliefs;
      std::vector<double> wagers;
      for (const Member& mem : members) {
        beliefs.push_back(*mem.belief);
        wagers.push_back(mem.wager);
      }
      return weighted_mean(beliefs, wagers);
    }
    case RuleKind::kLogarithmic:
    case RuleKind::kGeneralizedLogarithmic:
      return geometric_mean_report(players, coalition, rule.log_floor());
    case RuleKind::kSpherical:
      return spherical_report(players, coalition);
    case RuleKind::kCustomBinary: {
      const double q =
          binary_equalizer(*rule.generator(), players, coalition);
      const double probs[] = {q, 1.0 - q};
      return Forecast::validate(probs);
    }
    case RuleKind::kLinear:
      break;
  }
  throw Error(ErrorCode::kUnsupportedRule,
              "no identical-report construction for the " +
                  rule_kind_name(rule.kind()) + " rule");
}

std::vector<double> surplus_by_outcome(const ScoringRule& rule,
                                       std::span<const Player> players,
                                       const Coalition& coalition,
                                       const Forecast& q) {
  const auto members = collect_members(players, coalition, 1);
  const std::size_t m = q.size();
  std::vector<double> out(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    const OutcomeIndex e(j);
    const double coordinated = score(rule, q, e);
    for (const Member& mem : members) {
      out[j] += mem.wager * (coordinated - score(rule, *mem.belief, e));
    }
  }
  return out;
}

ArbitrageResult arbitrage_report(const ScoringRule& rule,
                                 std::span<const Player> players,
                                 const Coalition& coalition) {
  const auto members = collect_members(players, coalition, 2);
  if (rule.kind() == RuleKind::kLinear) {
    throw Error(ErrorCode::kUnsupportedRule,
                "the linear rule is not proper; it has no arbitrage report");
  }
  if (rule.is_log_family()) require_log_support(members, rule.log_floor());

  const bool agreement = agree(members);
  Forecast q = agreement ? *members.front().belief
                         : equalizing_report(rule, players, coalition);
  std::vector<double> surplus = surplus_by_outcome(rule, players, coalition, q);

  const auto [lo, hi] = std::minmax_element(surplus.begin(), surplus.end());
  double mean = 0.0;
  for (double s : surplus) mean += s;
  mean /= static_cast<double>(surplus.size());
  const bool equalized = (*hi - *lo) <= 1e-9 * std::max(1.0, std::abs(mean));
  return ArbitrageResult{std::move(q), std::move(surplus), equalized,
                         agreement};
}

double closed_form_surplus(const ScoringRule& rule,
                           std::span<const Player> players,
                           const Coalition& coalition) {
  const auto members = collect_members(players, coalition, 2);
  const double w_c = coalition.total_wager(players);
  const double b = rule.scale();
  switch (rule.kind()) {
    case RuleKind::kQuadratic: {
      const Forecast q = equalizing_report(rule, players, coalition);
      double total = 0.0;
      for (const Member& mem : members) {
        double d2 = 0.0;
        for (std::size_t j = 0; j < q.size(); ++j) {
          const double d = (*mem.belief)[j] - q[j];
          d2 += d * d;
        }
        total += mem.wager * d2;
      }
      return b * total;
    }
    case RuleKind::kLogarithmic:
    case RuleKind::kGeneralizedLogarithmic: {
      const double l = rule.log_floor();
      require_log_support(members, l);
      const auto m = static_cast<double>(members.front().belief->size());
      const double mass = 1.0 + m * l;
      const double log_total = log_sum_exp(log_geometric_means(members, l));
      return b * w_c * mass * (std::log(mass) - log_total);
    }
    case RuleKind::kSpherical: {
      const SphericalAux aux = spherical_aux_of(members);
      const double slack = 1.0 - aux.sum_sq_dev;
      if (agree(members) || !(slack > 0.0)) return 0.0;
      const auto m = static_cast<double>(aux.y.size());
      return b * w_c * (std::sqrt(slack / m) - aux.y_bar);
    }
    case RuleKind::kCustomBinary:
    case RuleKind::kLinear:
      break;
  }
  throw Error(ErrorCode::kUnsupportedRule,
              "no closed-form surplus for the " + rule_kind_name(rule.kind()) +
                  " rule");
}

SphericalAux spherical_aux(std::span<const Player> players,
                           const Coalition& coalition) {
  return spherical_aux_of(collect_members(players, coalition, 1));
}

// --- oracles -------------------------------------------------------------------

DominanceVerdict verify_dominance_oracle(const ScoringRule& rule,
                                         std::span<const Player> players,
                                         const Coalition& coalition,
                                         const Forecast& q) {
  coalition.check(players.size(), 1);
  DominanceVerdict verdict;
  const std::size_t m = q.size();
  verdict.surplus.assign(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    double coordinated = 0.0;
    double truthful = 0.0;
    for (std::size_t i : coalition.members()) {
      coordinated += players[i].wager() * score(rule, q, OutcomeIndex(j));
      truthful +=
          players[i].wager() * score(rule, players[i].belief(), OutcomeIndex(j));
    }
    verdict.surplus[j] = coordinated - truthful;
  }
  verdict.min_surplus =
      *std::min_element(verdict.surplus.begin(), verdict.surplus.end());

  bool all_positive = true;
  bool all_zero = true;
  for (std::size_t j = 0; j < m; ++j) {
    const double s = verdict.surplus[j];
    if (!(s > kDominanceTolerance)) {
      all_positive = false;
      if (!verdict.witness) verdict.witness = OutcomeIndex(j);
    }
    if (!(std::abs(s) <= kDominanceTolerance)) all_zero = false;
  }
  if (all_positive) {
    verdict.status = DominanceStatus::kDominates;
  } else if (all_zero) {
    verdict.status = DominanceStatus::kTies;
  } else {
    verdict.status = DominanceStatus::kFails;
    // Report the first strictly losing outcome when there is one.
    for (std::size_t j = 0; j < m; ++j) {
      if (verdict.surplus[j] < -kDominanceTolerance) {
        verdict.witness = OutcomeIndex(j);
        break;
      }
    }
  }
  return verdict;
}

GridEqualizer grid_search_equalizer(const ScoringRule& rule,
                                    std::span<const Player> players,
                                    const Coalition& coalition,
                                    std::size_t resolution) {
  if (resolution < 10) {
    throw Error(ErrorCode::kInvalidArgument,
                "grid equalizer needs resolution >= 10");
  }
  const auto members = collect_members(players, coalition, 1);
  const std::size_t m = members.front().belief->size();
  const double w_c = coalition.total_wager(players);
  std::vector<double> truthful(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    for (const Member& mem : members) {
      truthful[j] += mem.wager * score(rule, *mem.belief, OutcomeIndex(j));
    }
  }
  double best_value = -std::numeric_limits<double>::infinity();
  std::vector<double> best;
  for_each_grid_point(m, resolution, [&](std::span<const double> point) {
    const Forecast candidate = Forecast::validate(point);
    double worst = std::numeric_limits<double>::infinity();
    try {
      for (std::size_t j = 0; j < m; ++j) {
        worst = std::min(
            worst, w_c * score(rule, candidate, OutcomeIndex(j)) - truthful[j]);
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kLogOfZero ||
          e.code() == ErrorCode::kOutOfDomain) {
        return;
      }
      throw;
    }
    if (worst > best_value) {
      best_value = worst;
      best.assign(point.begin(), point.end());
    }
  });
  if (best.empty()) {
    throw Error(ErrorCode::kUnsupportedRule,
                "the rule cannot score any lattice point");
  }
  return GridEqualizer{Forecast::validate(best), best_value};
}

}  // namespace coalition_forge
