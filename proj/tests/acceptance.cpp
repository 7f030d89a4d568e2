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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "coalition_forge/arbitrage.hpp"
#include "coalition_forge/commands.hpp"
#include "coalition_forge/market_sim.hpp"
#include "coalition_forge/mechanisms.hpp"
#include "coalition_forge/scenario.hpp"
#include "test_support.hpp"

namespace cf = coalition_forge;
using cf::testing::F;
using cf::testing::Instances;
using cf::testing::rel_diff;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) { return cf::format_double(v); }

std::string scenario_path(const std::string& name) {
  return std::string(COALITION_FORGE_SCENARIO_DIR) + "/" + name;
}

const cf::Coalition kBoth({0, 1});

std::vector<cf::Player> pair(cf::Forecast a, cf::Forecast b) {
  return {cf::Player(std::move(a), 1.0), cf::Player(std::move(b), 1.0)};
}

Outcome rain_quadratic() {
  const auto rule = cf::ScoringRule::quadratic();
  const auto wide = cf::arbitrage_report(rule, pair(F({0.2, 0.8}), F({0.8, 0.2})), kBoth);
  const auto narrow =
      cf::arbitrage_report(rule, pair(F({0.4, 0.6}), F({0.6, 0.4})), kBoth);
  bool ok = true;
  for (std::size_t j = 0; j < 2; ++j) {
    ok = ok && rel_diff(wide.surplus_by_outcome[j], 0.36) <= 1e-9 &&
         rel_diff(narrow.surplus_by_outcome[j], 0.04) <= 1e-9 &&
         rel_diff(wide.surplus_by_outcome[j] / narrow.surplus_by_outcome[j], 9.0) <=
             1e-9;
  }
  return {ok, "surplus " + fmt(wide.surplus_by_outcome[0]) + " / " +
                  fmt(narrow.surplus_by_outcome[0]) + ", ratio " +
                  fmt(wide.surplus_by_outcome[0] / narrow.surplus_by_outcome[0])};
}

Outcome spherical_split() {
  const auto rule = cf::ScoringRule::spherical();
  const auto ps = pair(F({0.1, 0.9}), F({0.4, 0.6}));
  const auto r = cf::arbitrage_report(rule, ps, kBoth);
  const auto at_q = cf::verify_dominance_oracle(rule, ps, kBoth, r.q);
  const auto at_mean = cf::verify_dominance_oracle(rule, ps, kBoth, F({0.25, 0.75}));
  const bool ok = std::abs(r.q[0] - 0.275) <= 5e-4 &&
                  at_q.status == cf::DominanceStatus::kDominates &&
                  at_mean.status == cf::DominanceStatus::kFails &&
                  at_mean.witness && at_mean.witness->one_based() == 1;
  return {ok, "q1 = " + fmt(r.q[0]) + ", mean 0.25 fails at E" +
                  (at_mean.witness ? std::to_string(at_mean.witness->one_based())
                                   : std::string("?"))};
}

Outcome closed_form_vs_direct() {
  Instances gen(1001);
  const std::vector<cf::ScoringRule> rules{
      cf::ScoringRule::quadratic(), cf::ScoringRule::generalized_logarithmic(0.0),
      cf::ScoringRule::generalized_logarithmic(0.05), cf::ScoringRule::spherical()};
  double worst = 0.0;
  std::size_t checked = 0;
  for (const auto& rule : rules) {
    for (int t = 0; t < 200; ++t) {
      const std::size_t m = 2 + t % 2;
      const std::size_t c = std::vector<std::size_t>{2, 3, 5}[(t / 2) % 3];
      const std::size_t n = c + t % 3;
      const auto ps = gen.players(n, m);
      const cf::Coalition coalition = gen.coalition(n, c);
      const auto r = cf::arbitrage_report(rule, ps, coalition);
      const double closed = cf::closed_form_surplus(rule, ps, coalition);
      for (double s : r.surplus_by_outcome) worst = std::max(worst, rel_diff(s, closed));
      ++checked;
    }
  }
  return {worst <= 1e-9,
          std::to_string(checked) + " instances, worst relative gap " + fmt(worst)};
}

Outcome properness_suite() {
  Instances gen(1002);
  const std::vector<cf::ScoringRule> rules{
      cf::ScoringRule::quadratic(), cf::ScoringRule::logarithmic(),
      cf::ScoringRule::generalized_logarithmic(0.05), cf::ScoringRule::spherical()};
  std::size_t passed = 0, total = 0, linear_failed = 0, linear_total = 0;
  for (std::size_t m = 2; m <= 3; ++m) {
    for (int t = 0; t < 20; ++t) {
      const cf::Forecast belief = gen.interior(m);
      for (const auto& rule : rules) {
        ++total;
        passed += cf::check_strict_properness(rule, belief, 50).passed;
      }
      ++linear_total;
      linear_failed += !cf::check_strict_properness(cf::ScoringRule::linear(), belief, 50)
                             .passed;
    }
  }
  return {passed == total && linear_failed == linear_total,
          std::to_string(passed) + "/" + std::to_string(total) +
              " proper checks pass, linear fails " + std::to_string(linear_failed) +
              "/" + std::to_string(linear_total)};
}

Outcome competitive_identity() {
  Instances gen(1003);
  double worst = 0.0, worst_swap = 0.0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t m = 2 + t % 2;
    const std::size_t n = 3 + t % 6;
    const std::size_t c = 2 + t % (n - 2);
    auto ps = gen.with_reports(gen.players(n, m), m);
    const cf::Coalition coalition = gen.coalition(n, c);
    cf::MechanismSpec spec;
    spec.kind = cf::MechanismKind::kSelfFinancedCompetitive;
    spec.rule = t % 2 ? cf::ScoringRule::quadratic() : cf::ScoringRule::spherical();
    const cf::Forecast q = cf::arbitrage_report(spec.rule, ps, coalition).q;
    const std::vector<cf::Forecast> coordinated(c, q);
    const double w_c = coalition.total_wager(ps);
    double w_n = 0.0;
    for (const auto& p : ps) w_n += p.wager();
    const auto comp = cf::coalition_surplus(spec, ps, coalition, coordinated);
    const auto trad = cf::surplus_by_outcome(spec.rule, ps, coalition, q);
    for (std::size_t j = 0; j < m; ++j) {
      worst = std::max(worst, rel_diff(comp[j], (1.0 - w_c / w_n) * trad[j]));
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!coalition.contains(i)) ps[i] = ps[i].with_report(gen.interior(m));
    }
    const auto swapped = cf::coalition_surplus(spec, ps, coalition, coordinated);
    for (std::size_t j = 0; j < m; ++j) {
      worst_swap = std::max(worst_swap, rel_diff(swapped[j], comp[j]));
    }
  }
  return {worst <= 1e-9 && worst_swap <= 1e-9,
          "500 instances, worst identity gap " + fmt(worst) +
              ", outsider substitution gap " + fmt(worst_swap)};
}

Outcome self_financing() {
  Instances gen(1004);
  double worst_sum = 0.0;
  double tightest = 1e300;  // min over payments of (payment + wager) / wager
  for (int t = 0; t < 500; ++t) {
    const std::size_t m = 2 + t % 3;
    const std::size_t n = 2 + t % 7;
    const auto ps = gen.with_reports(gen.players(n, m), m);
    cf::MechanismSpec spec;
    spec.kind = cf::MechanismKind::kSelfFinancedCompetitive;
    spec.preset = cf::MechanismPreset::kLambert;
    spec.rule = cf::ScoringRule::quadratic();
    const cf::PaymentTable table = cf::payment_table(spec, ps);
    for (std::size_t j = 0; j < m; ++j) {
      worst_sum = std::max(worst_sum, std::abs(table.column_sum(j)));
      for (std::size_t i = 0; i < n; ++i) {
        tightest = std::min(tightest, (table(i, j) + ps[i].wager()) / ps[i].wager());
      }
    }
  }
  return {worst_sum <= 1e-9 && tightest > 0.0,
          "max |column sum| " + fmt(worst_sum) +
              ", min (payment + w_i) / w_i " + fmt(tightest)};
}

Outcome coalition_size_sweep() {
  cf::Scenario comp = cf::load_scenario(scenario_path("sweep_competitive.json"));
  cf::Scenario trad = cf::load_scenario(scenario_path("sweep_traditional.json"));
  auto sweep = [](const cf::Scenario& s) {
    const cf::SimulationSpec& sim = *s.simulation;
    return cf::expected_surplus_sweep(cf::SweepConfig{
        s.mechanism, *sim.sampler, sim.n, sim.fractions, sim.trials, sim.seed,
        sim.truth, 0});
  };
  const cf::SweepResult c = sweep(comp);
  const cf::SweepResult t = sweep(trad);
  double max_fraction = 0.0;
  for (double f : trad.simulation->fractions) max_fraction = std::max(max_fraction, f);
  const bool vertex_ok = c.quad_vertex && *c.quad_vertex >= 0.4 && *c.quad_vertex <= 0.6;
  return {vertex_ok && t.argmax_fraction == max_fraction,
          "competitive vertex " + (c.quad_vertex ? fmt(*c.quad_vertex) : "none") +
              ", traditional argmax " + fmt(t.argmax_fraction)};
}

Outcome spherical_invariants() {
  Instances gen(1005);
  bool ok = true;
  double worst_norm = 0.0, worst_agree = 0.0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t m = 2 + t % 3;
    const std::size_t c = 2 + t % 4;
    const auto ps = gen.players(c, m);
    const cf::Coalition all = gen.coalition(c, c);
    const cf::SphericalAux aux = cf::spherical_aux(ps, all);
    const cf::Forecast q = cf::spherical_report(ps, all);
    ok = ok && aux.sum_sq < 1.0;
    for (double x : q) ok = ok && x > 0.0;
    double sum = 0.0;
    for (double x : q) sum += x;
    ok = ok && std::abs(sum - 1.0) <= 1e-9;
    worst_norm = std::max(worst_norm, std::abs(cf::squared_norm(q) -
                                               1.0 / (m * (1.0 - aux.sum_sq_dev))));
    // Exact agreement: every member holds the first member's belief.
    std::vector<cf::Player> same;
    for (const auto& p : ps) same.emplace_back(ps[0].belief(), p.wager());
    worst_agree = std::max(worst_agree, std::abs(cf::spherical_aux(same, all).sum_sq - 1.0));
  }
  return {ok && worst_norm <= 1e-12 && worst_agree <= 1e-12,
          "norm identity gap " + fmt(worst_norm) + ", agreement gap " + fmt(worst_agree)};
}

Outcome logit_cross_check() {
  Instances gen(1006);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t c = 2 + t % 5;
    const auto ps = gen.players(c, 2);
    const cf::Coalition all = gen.coalition(c, c);
    const double bisect = cf::binary_equalizer(cf::logarithmic_generator(), ps, all);
    worst = std::max(worst,
                     std::abs(bisect - cf::geometric_mean_report(ps, all, 0.0)[0]));
  }
  return {worst <= 1e-9, "100 coalitions, worst gap " + fmt(worst)};
}

Outcome determinism() {
  const cf::Scenario s = cf::load_scenario(scenario_path("sweep_competitive.json"));
  cf::CommandOptions o;
  o.format = cf::OutputFormat::kCsv;
  const cf::CommandOutput a = cf::run_command("simulate", s, o);
  const cf::CommandOutput b = cf::run_command("simulate", s, o);
  const bool ok = a.exit_code == cf::kExitOk && b.exit_code == cf::kExitOk &&
                  !a.text.empty() && a.text == b.text;
  return {ok, std::to_string(a.text.size()) + " CSV bytes, " +
                  (a.text == b.text ? "identical" : "different")};
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "quadratic two-player surplus and ratio", 1, rain_quadratic},
      {2, "spherical equalizing report and mean counterexample", 1, spherical_split},
      {3, "closed-form surplus equals direct surplus", 5, closed_form_vs_direct},
      {4, "strict properness grid suite", 30, properness_suite},
      {5, "competitive surplus identity", 5, competitive_identity},
      {6, "self-financing and Lambert floor", 5, self_financing},
      {7, "coalition-size sweep", 60, coalition_size_sweep},
      {8, "spherical report invariants", 5, spherical_invariants},
      {9, "logit bisection vs geometric mean", 2, logit_cross_check},
      {10, "simulate determinism", 60, determinism},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_seconds;
    const bool pass = out.pass && in_time;
    failures += !pass;
    std::printf("[%s] criterion %2d: %s -- %s (%.3f s%s)\n", pass ? "PASS" : "FAIL",
                c.id, c.name, out.detail.c_str(), secs,
                in_time ? "" : ", over time budget");
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
