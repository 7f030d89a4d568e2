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

#include "coalition_forge/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "coalition_forge/error.hpp"

namespace coalition_forge {

namespace {

const Forecast& submitted(const Player& p, std::size_t index) {
  if (!p.report()) {
    throw Error(ErrorCode::kMissingReport,
                "player " + std::to_string(index + 1) + " has no report");
  }
  return *p.report();
}

void check_preset(const MechanismSpec& spec, std::span<const Player> players) {
  if (spec.preset != MechanismPreset::kKilgourGerchak) return;
  for (const Player& p : players) {
    if (p.wager() != players.front().wager()) {
      throw Error(ErrorCode::kInvalidPlayer,
                  "the Kilgour-Gerchak preset needs equal wagers");
    }
  }
}

void check_ordering(std::span<const std::size_t> ordering, std::size_t n) {
  if (ordering.size() != n) {
    throw Error(ErrorCode::kInvalidArgument,
                "ordering must list each of the " + std::to_string(n) +
                    " players once");
  }
  std::vector<bool> seen(n, false);
  for (std::size_t i : ordering) {
    if (i >= n || seen[i]) {
      throw Error(ErrorCode::kInvalidArgument,
                  "ordering must list each of the " + std::to_string(n) +
                      " players once");
    }
    seen[i] = true;
  }
}

// Reports of every player: coordinated for members, otherwise the
// submitted report (or belief).
std::vector<Forecast> scenario_reports(std::span<const Player> players,
                                       const Coalition& coalition,
                                       std::span<const Forecast> coordinated,
                                       bool use_coordinated) {
  if (coordinated.size() != coalition.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "need one coordinated report per coalition member");
  }
  std::vector<Forecast> out;
  out.reserve(players.size());
  for (const Player& p : players) out.push_back(p.report_or_belief());
  for (std::size_t k = 0; k < coalition.size(); ++k) {
    const std::size_t i = coalition.members()[k];
    out[i] = use_coordinated ? coordinated[k] : players[i].belief();
  }
  return out;
}

std::vector<double> competitive_column(const ScoringRule& rule,
                                       std::span<const Player> players,
                                       std::span<const Forecast> reports,
                                       OutcomeIndex outcome) {
  double w_n = 0.0;
  double pool = 0.0;
  std::vector<double> weighted(players.size());
  for (std::size_t i = 0; i < players.size(); ++i) {
    weighted[i] = players[i].wager() * score(rule, reports[i], outcome);
    w_n += players[i].wager();
    pool += weighted[i];
  }
  std::vector<double> out(players.size());
  for (std::size_t i = 0; i < players.size(); ++i) {
    out[i] = weighted[i] - players[i].wager() / w_n * pool;
  }
  return out;
}

// Market payments stored by player index.
std::vector<double> market_column(const ScoringRule& rule,
                                  std::span<const std::size_t> ordering,
                                  std::span<const Forecast> reports,
                                  const Forecast& prior, OutcomeIndex outcome) {
  std::vector<double> out(reports.size(), 0.0);
  double previous = score(rule, prior, outcome);
  for (std::size_t i : ordering) {
    const double current = score(rule, reports[i], outcome);
    out[i] = current - previous;
    previous = current;
  }
  return out;
}

}  // namespace

ScoringRule MechanismSpec::effective_rule(std::size_t m) const {
  if (kind == MechanismKind::kSelfFinancedCompetitive &&
      preset == MechanismPreset::kLambert) {
    return normalize_to_unit_interval(rule, m);
  }
  return rule;
}

Forecast MechanismSpec::prior_or_uniform(std::size_t m) const {
  if (market_prior) {
    if (market_prior->size() != m) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "market prior has the wrong number of states");
    }
    return *market_prior;
  }
  return Forecast::uniform(m);
}

std::vector<std::size_t> MechanismSpec::ordering_or_natural(
    std::size_t n) const {
  if (ordering) {
    check_ordering(*ordering, n);
    return *ordering;
  }
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = i;
  return out;
}

std::string mechanism_name(const MechanismSpec& spec) {
  switch (spec.kind) {
    case MechanismKind::kTraditional: return "traditional";
    case MechanismKind::kMarketScoring: return "market";
    case MechanismKind::kSelfFinancedCompetitive:
      switch (spec.preset) {
        case MechanismPreset::kKilgourGerchak: return "kilgour_gerchak";
        case MechanismPreset::kLambert: return "lambert";
        case MechanismPreset::kNone: break;
      }
      return "competitive";
  }
  return "unknown";
}

std::vector<double> PaymentTable::column(std::size_t j) const {
  std::vector<double> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = (*this)(i, j);
  return out;
}

double PaymentTable::column_sum(std::size_t j) const {
  double s = 0.0;
  for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, j);
  return s;
}

std::vector<double> traditional_payments(const ScoringRule& rule,
                                         std::span<const Player> players,
                                         OutcomeIndex outcome) {
  std::vector<double> out(players.size());
  for (std::size_t i = 0; i < players.size(); ++i) {
    out[i] = players[i].wager() * score(rule, submitted(players[i], i), outcome);
  }
  return out;
}

std::vector<double> competitive_payments(const ScoringRule& rule,
                                         std::span<const Player> players,
                                         OutcomeIndex outcome) {
  if (players.size() < 2) {
    throw Error(ErrorCode::kSinglePlayer,
                "a competitive mechanism needs at least 2 players");
  }
  std::vector<Forecast> reports;
  reports.reserve(players.size());
  for (std::size_t i = 0; i < players.size(); ++i) {
    reports.push_back(submitted(players[i], i));
  }
  return competitive_column(rule, players, reports, outcome);
}

std::vector<double> market_scoring_payments(
    const ScoringRule& rule, std::span<const Forecast> reports,
    const std::optional<Forecast>& prior, OutcomeIndex outcome) {
  if (!prior) {
    throw Error(ErrorCode::kMissingPrior,
                "market scoring needs a prior report r_0");
  }
  std::vector<double> out(reports.size());
  double previous = score(rule, *prior, outcome);
  for (std::size_t k = 0; k < reports.size(); ++k) {
    const double current = score(rule, reports[k], outcome);
    out[k] = current - previous;
    previous = current;
  }
  return out;
}

double market_total(const ScoringRule& rule, std::span<const Forecast> reports,
                    const Forecast& prior, OutcomeIndex outcome) {
  const auto column = market_scoring_payments(rule, reports, prior, outcome);
  double s = 0.0;
  for (double v : column) s += v;
  return s;
}

PaymentTable payment_table(const MechanismSpec& spec,
                           std::span<const Player> players) {
  if (players.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no players");
  }
  check_preset(spec, players);
  const std::size_t n = players.size();
  const std::size_t m = players.front().belief().size();
  const ScoringRule rule = spec.effective_rule(m);
  PaymentTable table(n, m);
  std::vector<Forecast> reports;
  if (spec.kind == MechanismKind::kMarketScoring) {
    for (std::size_t i = 0; i < n; ++i) {
      reports.push_back(submitted(players[i], i));
    }
  }
  const auto ordering = spec.kind == MechanismKind::kMarketScoring
                            ? spec.ordering_or_natural(n)
                            : std::vector<std::size_t>{};
  for (std::size_t j = 0; j < m; ++j) {
    const OutcomeIndex e(j);
    std::vector<double> col;
    switch (spec.kind) {
      case MechanismKind::kTraditional:
        col = traditional_payments(rule, players, e);
        break;
      case MechanismKind::kSelfFinancedCompetitive:
        col = competitive_payments(rule, players, e);
        break;
      case MechanismKind::kMarketScoring:
        col = market_column(rule, ordering, reports, spec.prior_or_uniform(m),
                            e);
        break;
    }
    for (std::size_t i = 0; i < n; ++i) table(i, j) = col[i];
  }
  return table;
}

double coalition_surplus_traditional(const ScoringRule& rule,
                                     std::span<const Player> players,
                                     const Coalition& coalition,
                                     std::span<const Forecast> coordinated,
                                     OutcomeIndex outcome) {
  coalition.check(players.size(), 1);
  if (coordinated.size() != coalition.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "need one coordinated report per coalition member");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < coalition.size(); ++k) {
    const Player& p = players[coalition.members()[k]];
    total += p.wager() *
             (score(rule, coordinated[k], outcome) - score(rule, p.belief(), outcome));
  }
  return total;
}

CompetitiveSurplus coalition_surplus_competitive(
    const ScoringRule& rule, std::span<const Player> players,
    const Coalition& coalition, std::span<const Forecast> coordinated,
    OutcomeIndex outcome) {
  coalition.check(players.size(), 1);
  if (players.size() < 2) {
    throw Error(ErrorCode::kSinglePlayer,
                "a competitive mechanism needs at least 2 players");
  }
  CompetitiveSurplus out;
  out.coalition_is_everyone = coalition.size() == players.size();
  // Self-financing: the members' total is zero in both scenarios.
  if (out.coalition_is_everyone) return out;
  const auto with = scenario_reports(players, coalition, coordinated, true);
  const auto without = scenario_reports(players, coalition, coordinated, false);
  const auto paid_with = competitive_column(rule, players, with, outcome);
  const auto paid_without = competitive_column(rule, players, without, outcome);
  for (std::size_t i : coalition.members()) {
    out.surplus += paid_with[i] - paid_without[i];
  }
  return out;
}

bool ordering_violates(std::span<const std::size_t> ordering,
                       const Coalition& coalition) {
  for (std::size_t k = 1; k < ordering.size(); ++k) {
    if (coalition.contains(ordering[k]) && coalition.contains(ordering[k - 1])) {
      return true;
    }
  }
  return false;
}

MarketSurplus coalition_surplus_market(const ScoringRule& rule,
                                       std::span<const Player> players,
                                       std::span<const std::size_t> ordering,
                                       const Coalition& coalition,
                                       std::span<const Forecast> coordinated,
                                       const Forecast& prior,
                                       OutcomeIndex outcome) {
  coalition.check(players.size(), 1);
  check_ordering(ordering, players.size());
  MarketSurplus out;
  out.ordering_violation = ordering_violates(ordering, coalition);
  const auto with = scenario_reports(players, coalition, coordinated, true);
  const auto without = scenario_reports(players, coalition, coordinated, false);
  const auto paid_with = market_column(rule, ordering, with, prior, outcome);
  const auto paid_without = market_column(rule, ordering, without, prior, outcome);
  for (std::size_t i : coalition.members()) {
    out.surplus += paid_with[i] - paid_without[i];
  }
  return out;
}

std::vector<double> coalition_surplus(const MechanismSpec& spec,
                                      std::span<const Player> players,
                                      const Coalition& coalition,
                                      std::span<const Forecast> coordinated) {
  if (players.empty()) throw Error(ErrorCode::kInvalidArgument, "no players");
  check_preset(spec, players);
  const std::size_t m = players.front().belief().size();
  const ScoringRule rule = spec.effective_rule(m);
  std::vector<double> out(m);
  for (std::size_t j = 0; j < m; ++j) {
    const OutcomeIndex e(j);
    switch (spec.kind) {
      case MechanismKind::kTraditional:
        out[j] = coalition_surplus_traditional(rule, players, coalition,
                                               coordinated, e);
        break;
      case MechanismKind::kSelfFinancedCompetitive:
        out[j] = coalition_surplus_competitive(rule, players, coalition,
                                               coordinated, e)
                     .surplus;
        break;
      case MechanismKind::kMarketScoring: {
        const auto ordering = spec.ordering_or_natural(players.size());
        out[j] = coalition_surplus_market(rule, players, ordering, coalition,
                                          coordinated, spec.prior_or_uniform(m),
                                          e)
                     .surplus;
        break;
      }
    }
  }
  return out;
}

}  // namespace coalition_forge
