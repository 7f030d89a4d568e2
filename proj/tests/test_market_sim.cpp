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

#include "coalition_forge/market_sim.hpp"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "coalition_forge/error.hpp"
#include "coalition_forge/random.hpp"
#include "test_support.hpp"

namespace coalition_forge {
namespace {

using testing::F;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kInvalidArgument;
}

TEST(RngTest, SplitMixReferenceSequence) {
  SplitMix64 g(1234567);
  EXPECT_EQ(g.next(), 6457827717110365317ULL);
  EXPECT_EQ(g.next(), 3203168211198807973ULL);
  EXPECT_EQ(g.next(), 9817491932198370423ULL);
}

TEST(RngTest, FrozenStreams) {
  Rng a(42, 0);
  EXPECT_EQ(a.next(), 13696896915399030466ULL);
  EXPECT_EQ(a.next(), 12641092763546669283ULL);
  EXPECT_EQ(a.next(), 14580102322132234639ULL);
  Rng b(42, 1);
  EXPECT_EQ(b.next(), 11753091247201629797ULL);
}

TEST(RngTest, UniformAndBelowRanges) {
  Rng r(7, 3);
  for (int k = 0; k < 10000; ++k) {
    const double u = r.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    const double o = r.uniform_open();
    EXPECT_GT(o, 0.0);
    EXPECT_LT(o, 1.0);
    EXPECT_LT(r.below(7), 7u);
  }
}

TEST(RngTest, GammaMoments) {
  for (double shape : {0.5, 1.0, 2.0, 7.5}) {
    Rng r(99, 0);
    const int n = 200000;
    double sum = 0.0, sum_sq = 0.0;
    for (int k = 0; k < n; ++k) {
      const double x = r.gamma(shape);
      ASSERT_GT(x, 0.0);
      sum += x;
      sum_sq += x * x;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    // Mean and variance of Gamma(shape, 1) are both `shape`.
    EXPECT_NEAR(mean, shape, 4.0 * std::sqrt(shape / n)) << shape;
    EXPECT_NEAR(var, shape, 0.05 * shape) << shape;
  }
}

TEST(SamplerTest, Validation) {
  EXPECT_EQ(code_of([] { BeliefSampler(BetaBinary{0.0, 1.0}); }),
            ErrorCode::kInvalidSampler);
  EXPECT_EQ(code_of([] { BeliefSampler(DirichletM{{1.0}}); }),
            ErrorCode::kInvalidSampler);
  EXPECT_EQ(code_of([] {
              BeliefSampler(FiniteMixture{{F({0.5, 0.5})}, {1.0, 2.0}});
            }),
            ErrorCode::kInvalidSampler);
  EXPECT_EQ(BeliefSampler(DirichletM{{1, 2, 3}}).states(), 3u);
}

TEST(SamplePopulationTest, Reproducible) {
  const BeliefSampler s(BetaBinary{2.0, 2.0});
  const auto a = sample_population(s, 4, 42);
  const auto b = sample_population(s, 4, 42);
  ASSERT_EQ(a.size(), 4u);
  EXPECT_EQ(a, b);
  for (const Player& p : a) {
    EXPECT_EQ(p.wager(), 1.0);
    EXPECT_EQ(p.belief().size(), 2u);
  }
  EXPECT_NE(sample_population(s, 4, 43), a);
  EXPECT_THROW(sample_population(s, 1, 42), Error);
}

TEST(SamplePopulationTest, MixtureDrawsOnlyItsPoints) {
  const BeliefSampler s(FiniteMixture{{F({0.2, 0.8}), F({0.8, 0.2})}, {1.0, 1.0}});
  int first = 0;
  for (const Player& p : sample_population(s, 500, 3)) {
    const bool a = p.belief() == F({0.2, 0.8});
    EXPECT_TRUE(a || p.belief() == F({0.8, 0.2}));
    first += a;
  }
  EXPECT_GT(first, 200);
  EXPECT_LT(first, 300);
}

TEST(SamplePopulationTest, DirichletMeanIsUniform) {
  const BeliefSampler s(DirichletM{{1.0, 1.0, 1.0}});
  const auto ps = sample_population(s, 1000, 5);
  for (std::size_t j = 0; j < 3; ++j) {
    double sum = 0.0, sum_sq = 0.0;
    for (const Player& p : ps) {
      sum += p.belief()[j];
      sum_sq += p.belief()[j] * p.belief()[j];
    }
    const double mean = sum / 1000.0;
    const double se = std::sqrt((sum_sq / 1000.0 - mean * mean) / 1000.0);
    EXPECT_NEAR(mean, 1.0 / 3.0, 3.0 * se);
  }
}

SweepConfig small_config(MechanismKind kind) {
  SweepConfig cfg{MechanismSpec{}, BeliefSampler(BetaBinary{2.0, 2.0}), 20,
                  {0.1, 0.3, 0.5, 0.7, 1.0}, 300, 77, std::nullopt, 1};
  cfg.mechanism.kind = kind;
  return cfg;
}

TEST(SweepTest, ThreadCountDoesNotChangeResults) {
  SweepConfig cfg = small_config(MechanismKind::kSelfFinancedCompetitive);
  const SweepResult one = expected_surplus_sweep(cfg);
  cfg.threads = 4;
  const SweepResult four = expected_surplus_sweep(cfg);
  ASSERT_EQ(one.rows.size(), four.rows.size());
  for (std::size_t k = 0; k < one.rows.size(); ++k) {
    EXPECT_EQ(one.rows[k].mean, four.rows[k].mean);
    EXPECT_EQ(one.rows[k].se, four.rows[k].se);
  }
  EXPECT_EQ(one.quad_vertex, four.quad_vertex);
}

TEST(SweepTest, TraditionalIncreasesAndCompetitiveVanishesAtFullCoalition) {
  const SweepResult trad = expected_surplus_sweep(small_config(MechanismKind::kTraditional));
  for (std::size_t k = 1; k < trad.rows.size(); ++k) {
    EXPECT_GT(trad.rows[k].mean, trad.rows[k - 1].mean);
  }
  EXPECT_EQ(trad.argmax_fraction, 1.0);
  EXPECT_GT(trad.linear_slope, 0.0);

  const SweepResult comp =
      expected_surplus_sweep(small_config(MechanismKind::kSelfFinancedCompetitive));
  EXPECT_EQ(comp.rows.back().mean, 0.0);
  EXPECT_LT(comp.quad_a2, 0.0);
  for (std::size_t k = 0; k < comp.rows.size(); ++k) {
    EXPECT_EQ(comp.rows[k].trials, 300u);
    EXPECT_TRUE(std::isfinite(comp.rows[k].se));
    // Same seed, same populations: the factor (1 - f) holds trial by trial.
    const double f = comp.rows[k].fraction;
    const double se = std::hypot(comp.rows[k].se, (1.0 - f) * trad.rows[k].se);
    EXPECT_NEAR(comp.rows[k].mean, (1.0 - f) * trad.rows[k].mean, 3.0 * se + 1e-12);
    EXPECT_NEAR(comp.rows[k].mean_per_member,
                comp.rows[k].mean / comp.rows[k].coalition_size, 1e-15);
  }
}

TEST(SweepTest, Errors) {
  SweepConfig cfg = small_config(MechanismKind::kTraditional);
  cfg.fractions = {0.0};
  EXPECT_EQ(code_of([&] { expected_surplus_sweep(cfg); }), ErrorCode::kFractionOutOfRange);
  cfg.fractions = {1.2};
  EXPECT_EQ(code_of([&] { expected_surplus_sweep(cfg); }), ErrorCode::kFractionOutOfRange);
  cfg.fractions = {0.01};  // rounds to a one-member coalition
  EXPECT_EQ(code_of([&] { expected_surplus_sweep(cfg); }), ErrorCode::kFractionOutOfRange);
  cfg = small_config(MechanismKind::kMarketScoring);
  EXPECT_EQ(code_of([&] { expected_surplus_sweep(cfg); }),
            ErrorCode::kUnsupportedMechanism);
}

TEST(IntermediaryTest, Examples) {
  const std::vector<Player> ex1{Player(F({0.2, 0.8}), 1.0), Player(F({0.8, 0.2}), 1.0)};
  MechanismSpec trad;
  const IntermediaryRun a = intermediary_run(trad, ex1, Coalition({0, 1}), 9);
  for (double x : a.profit_by_outcome) EXPECT_NEAR(x, 0.36, 1e-12);
  EXPECT_NEAR(a.min_profit, 0.36, 1e-12);
  EXPECT_FALSE(a.no_arbitrage);
  EXPECT_EQ(a.scenario_id, "run-9");

  std::vector<Player> four = ex1;
  four.emplace_back(F({0.5, 0.5}), 1.0);
  four.emplace_back(F({0.3, 0.7}), 1.0);
  MechanismSpec comp;
  comp.kind = MechanismKind::kSelfFinancedCompetitive;
  const IntermediaryRun b = intermediary_run(comp, four, Coalition({0, 1}), 9);
  for (double x : b.profit_by_outcome) EXPECT_NEAR(x, 0.18, 1e-12);

  const std::vector<Player> agree{Player(F({0.4, 0.6}), 1.0), Player(F({0.4, 0.6}), 2.0)};
  const IntermediaryRun c = intermediary_run(trad, agree, Coalition({0, 1}), 9);
  EXPECT_TRUE(c.no_arbitrage);
  EXPECT_EQ(c.min_profit, 0.0);
}

TEST(IntermediaryTest, DisagreeingClientsAlwaysProfit) {
  testing::Instances gen(41);
  for (int t = 0; t < 200; ++t) {
    const auto ps = gen.players(5, 2 + t % 2);
    MechanismSpec spec;
    spec.kind = t % 2 ? MechanismKind::kTraditional
                      : MechanismKind::kSelfFinancedCompetitive;
    spec.rule = t % 3 ? ScoringRule::spherical() : ScoringRule::quadratic();
    EXPECT_GT(intermediary_run(spec, ps, gen.coalition(5, 3), t).min_profit, 0.0);
  }
}

TEST(MarketSessionTest, AlternatingAdjacentAndTruthful) {
  MechanismSpec market;
  market.kind = MechanismKind::kMarketScoring;
  const BeliefSampler s(BetaBinary{2.0, 2.0});
  const std::vector<std::size_t> order{0, 1, 2, 3, 4, 5};
  const Coalition alternating({1, 3, 5});
  const MarketSession a = market_session(market, order, alternating, s, 5);
  EXPECT_FALSE(a.ordering_violation);
  for (double x : a.surplus_by_outcome) EXPECT_GT(x, 0.0);

  const Coalition adjacent({1, 2, 5});
  EXPECT_TRUE(market_session(market, order, adjacent, s, 5).ordering_violation);

  const MarketSession t = market_session(market, order, alternating, s, 5, false);
  for (double x : t.surplus_by_outcome) EXPECT_EQ(x, 0.0);
}

}  // namespace
}  // namespace coalition_forge
