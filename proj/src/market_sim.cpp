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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>

#include "coalition_forge/error.hpp"

namespace coalition_forge {

namespace {

double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

std::size_t draw_outcome(Rng& rng, const std::optional<Forecast>& truth,
                         std::size_t m) {
  if (!truth) return static_cast<std::size_t>(rng.below(m));
  const double u = rng.uniform();
  double cumulative = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    cumulative += (*truth)[j];
    if (u < cumulative) return j;
  }
  // u landed in the rounding gap at the top; take the last supported state.
  for (std::size_t j = m; j-- > 0;) {
    if ((*truth)[j] > 0.0) return j;
  }
  return m - 1;
}

// Solves the 3x3 system a x = b by Gaussian elimination with partial
// pivoting. Returns false if it is singular.
bool solve3(std::array<std::array<double, 4>, 3> a, std::array<double, 3>& x) {
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (std::abs(a[pivot][col]) < 1e-300) return false;
    std::swap(a[col], a[pivot]);
    for (int r = col + 1; r < 3; ++r) {
      const double f = a[r][col] / a[col][col];
      for (int k = col; k < 4; ++k) a[r][k] -= f * a[col][k];
    }
  }
  for (int r = 2; r >= 0; --r) {
    double s = a[r][3];
    for (int k = r + 1; k < 3; ++k) s -= a[r][k] * x[k];
    x[r] = s / a[r][r];
  }
  return true;
}

void fit_curves(SweepResult& result) {
  const std::size_t k = result.rows.size();
  if (k >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const SweepRow& row : result.rows) {
      sx += row.fraction;
      sy += row.mean;
      sxx += row.fraction * row.fraction;
      sxy += row.fraction * row.mean;
    }
    const double n = static_cast<double>(k);
    const double denom = n * sxx - sx * sx;
    if (denom != 0.0) {
      result.linear_slope = (n * sxy - sx * sy) / denom;
      result.linear_intercept = (sy - result.linear_slope * sx) / n;
    }
  }
  if (k >= 3) {
    // Normal equations for mean ~ a0 + a1 f + a2 f^2.
    std::array<double, 5> pow_sum{};
    std::array<double, 3> rhs{};
    for (const SweepRow& row : result.rows) {
      double p = 1.0;
      for (int e = 0; e < 5; ++e) {
        pow_sum[e] += p;
        if (e < 3) rhs[e] += p * row.mean;
        p *= row.fraction;
      }
    }
    std::array<std::array<double, 4>, 3> a{};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) a[r][c] = pow_sum[r + c];
      a[r][3] = rhs[r];
    }
    std::array<double, 3> coef{};
    if (solve3(a, coef)) {
      result.quad_a0 = coef[0];
      result.quad_a1 = coef[1];
      result.quad_a2 = coef[2];
      if (coef[2] != 0.0) result.quad_vertex = -coef[1] / (2.0 * coef[2]);
    }
  }
}

template <typename Body>
void run_parallel(std::size_t count, std::size_t threads, Body body) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t t = 0; t < count; ++t) body(t);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (std::size_t w = 0; w < threads; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (std::size_t t = w; t < count; t += threads) body(t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& worker : workers) worker.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

// --- sampler -------------------------------------------------------------------

BeliefSampler::BeliefSampler(Params params) : params_(std::move(params)) {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (const auto* beta = std::get_if<BetaBinary>(&params_)) {
    if (!positive(beta->alpha) || !positive(beta->beta)) {
      throw Error(ErrorCode::kInvalidSampler,
                  "beta sampler parameters must be positive");
    }
  } else if (const auto* dir = std::get_if<DirichletM>(&params_)) {
    if (dir->alpha.size() < 2) {
      throw Error(ErrorCode::kInvalidSampler,
                  "dirichlet sampler needs at least 2 concentrations");
    }
    for (double a : dir->alpha) {
      if (!positive(a)) {
        throw Error(ErrorCode::kInvalidSampler,
                    "dirichlet concentrations must be positive");
      }
    }
  } else {
    const auto& mix = std::get<FiniteMixture>(params_);
    if (mix.points.empty() || mix.points.size() != mix.weights.size()) {
      throw Error(ErrorCode::kInvalidSampler,
                  "mixture needs one positive weight per point");
    }
    for (std::size_t k = 0; k < mix.points.size(); ++k) {
      if (!positive(mix.weights[k])) {
        throw Error(ErrorCode::kInvalidSampler,
                    "mixture weights must be positive");
      }
      if (mix.points[k].size() != mix.points.front().size()) {
        throw Error(ErrorCode::kInvalidSampler,
                    "mixture points must share a state count");
      }
    }
  }
}

std::size_t BeliefSampler::states() const {
  if (std::holds_alternative<BetaBinary>(params_)) return 2;
  if (const auto* dir = std::get_if<DirichletM>(&params_)) {
    return dir->alpha.size();
  }
  return std::get<FiniteMixture>(params_).points.front().size();
}

Forecast BeliefSampler::draw(Rng& rng) const {
  if (const auto* beta = std::get_if<BetaBinary>(&params_)) {
    const double x = rng.gamma(beta->alpha);
    const double y = rng.gamma(beta->beta);
    const double p = x / (x + y);
    const double probs[] = {p, 1.0 - p};
    return Forecast::validate(probs);
  }
  if (const auto* dir = std::get_if<DirichletM>(&params_)) {
    std::vector<double> g(dir->alpha.size());
    double total = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      g[j] = rng.gamma(dir->alpha[j]);
      total += g[j];
    }
    for (double& v : g) v /= total;
    return Forecast::validate(g);
  }
  const auto& mix = std::get<FiniteMixture>(params_);
  const double total =
      std::accumulate(mix.weights.begin(), mix.weights.end(), 0.0);
  const double u = rng.uniform() * total;
  double cumulative = 0.0;
  for (std::size_t k = 0; k < mix.points.size(); ++k) {
    cumulative += mix.weights[k];
    if (u < cumulative) return mix.points[k];
  }
  return mix.points.back();
}

std::vector<Player> sample_population(const BeliefSampler& sampler,
                                      std::size_t n, std::uint64_t seed) {
  if (n < 2) {
    throw Error(ErrorCode::kInvalidArgument, "population needs n >= 2");
  }
  Rng rng(seed, 0);
  std::vector<Player> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(sampler.draw(rng), 1.0);
  return out;
}

std::size_t default_thread_count() {
  if (const char* env = std::getenv("COALITION_FORGE_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// --- sweep ---------------------------------------------------------------------

SweepResult expected_surplus_sweep(const SweepConfig& config) {
  const MechanismKind kind = config.mechanism.kind;
  if (kind == MechanismKind::kMarketScoring) {
    throw Error(ErrorCode::kUnsupportedMechanism,
                "coalition-size sweeps cover traditional and competitive "
                "mechanisms; use a market session for market scoring");
  }
  if (config.n < 2) {
    throw Error(ErrorCode::kInvalidArgument, "sweep needs n >= 2");
  }
  if (config.trials < 1) {
    throw Error(ErrorCode::kInvalidArgument, "sweep needs trials >= 1");
  }
  if (config.fractions.empty()) {
    throw Error(ErrorCode::kFractionOutOfRange, "no coalition fractions");
  }
  const std::size_t m = config.sampler.states();
  if (config.truth && config.truth->size() != m) {
    throw Error(ErrorCode::kDimensionMismatch,
                "truth distribution does not match the sampler's states");
  }
  std::vector<std::size_t> sizes;
  for (double f : config.fractions) {
    if (!(f > 0.0 && f <= 1.0)) {
      throw Error(ErrorCode::kFractionOutOfRange,
                  "fraction " + std::to_string(f) + " is outside (0, 1]");
    }
    const auto c = static_cast<std::size_t>(
        std::llround(f * static_cast<double>(config.n)));
    if (c < 2) {
      throw Error(ErrorCode::kFractionOutOfRange,
                  "fraction " + std::to_string(f) +
                      " gives a coalition of fewer than 2 players");
    }
    sizes.push_back(c);
  }
  const ScoringRule rule = config.mechanism.effective_rule(m);
  const std::size_t fractions = sizes.size();
  const std::size_t trials = config.trials;
  // surplus[f * trials + t]
  std::vector<double> surplus(fractions * trials, 0.0);

  const std::size_t threads =
      config.threads == 0 ? default_thread_count() : config.threads;
  run_parallel(trials, threads, [&](std::size_t t) {
    Rng rng(config.seed, t);
    std::vector<Player> population;
    population.reserve(config.n);
    for (std::size_t i = 0; i < config.n; ++i) {
      population.emplace_back(config.sampler.draw(rng), 1.0);
    }
    std::vector<std::size_t> perm(config.n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = config.n - 1; i > 0; --i) {
      std::swap(perm[i], perm[rng.below(i + 1)]);
    }
    const OutcomeIndex outcome(draw_outcome(rng, config.truth, m));
    for (std::size_t f = 0; f < fractions; ++f) {
      const Coalition coalition(
          std::vector<std::size_t>(perm.begin(), perm.begin() + sizes[f]));
      const Forecast q = equalizing_report(rule, population, coalition);
      const std::vector<Forecast> coordinated(sizes[f], q);
      surplus[f * trials + t] =
          kind == MechanismKind::kTraditional
              ? coalition_surplus_traditional(rule, population, coalition,
                                              coordinated, outcome)
              : coalition_surplus_competitive(rule, population, coalition,
                                              coordinated, outcome)
                    .surplus;
    }
  });

  SweepResult result;
  for (std::size_t f = 0; f < fractions; ++f) {
    const double* x = surplus.data() + f * trials;
    SweepRow row;
    row.fraction = config.fractions[f];
    row.coalition_size = sizes[f];
    row.trials = trials;
    row.mean = pairwise_sum(x, trials) / static_cast<double>(trials);
    if (trials > 1) {
      std::vector<double> dev(trials);
      for (std::size_t t = 0; t < trials; ++t) {
        dev[t] = (x[t] - row.mean) * (x[t] - row.mean);
      }
      const double var =
          pairwise_sum(dev.data(), trials) / static_cast<double>(trials - 1);
      row.se = std::sqrt(var / static_cast<double>(trials));
    }
    row.mean_per_member = row.mean / static_cast<double>(sizes[f]);
    result.rows.push_back(row);
  }
  const auto best = std::max_element(
      result.rows.begin(), result.rows.end(),
      [](const SweepRow& a, const SweepRow& b) { return a.mean < b.mean; });
  result.argmax_fraction = best->fraction;
  fit_curves(result);
  return result;
}

// --- intermediary / market session -------------------------------------------

IntermediaryRun intermediary_run(const MechanismSpec& mechanism,
                                 std::span<const Player> players,
                                 const Coalition& coalition,
                                 std::uint64_t seed) {
  coalition.check(players.size(), 2);
  const std::size_t m = players.front().belief().size();
  const ScoringRule rule = mechanism.effective_rule(m);
  IntermediaryRun run{"run-" + std::to_string(seed), {}, 0.0, false,
                      players[coalition.members().front()].belief()};
  run.no_arbitrage = members_agree(players, coalition);
  if (!run.no_arbitrage) run.q = equalizing_report(rule, players, coalition);
  const std::vector<Forecast> coordinated(coalition.size(), run.q);
  run.profit_by_outcome =
      coalition_surplus(mechanism, players, coalition, coordinated);
  run.min_profit = *std::min_element(run.profit_by_outcome.begin(),
                                     run.profit_by_outcome.end());
  return run;
}

MarketSession market_session(const MechanismSpec& mechanism,
                             std::span<const std::size_t> ordering,
                             const Coalition& coalition,
                             const BeliefSampler& sampler, std::uint64_t seed,
                             bool coordinate) {
  if (mechanism.kind != MechanismKind::kMarketScoring) {
    throw Error(ErrorCode::kUnsupportedMechanism,
                "market sessions need the market scoring mechanism");
  }
  MarketSession session;
  session.players = sample_population(sampler, ordering.size(), seed);
  coalition.check(session.players.size(), 2);
  const std::size_t m = sampler.states();
  const ScoringRule rule = mechanism.effective_rule(m);
  const Forecast prior = mechanism.prior_or_uniform(m);
  std::vector<Forecast> coordinated;
  if (coordinate) {
    const Forecast q = equalizing_report(rule, session.players, coalition);
    coordinated.assign(coalition.size(), q);
  } else {
    for (std::size_t i : coalition.members()) {
      coordinated.push_back(session.players[i].belief());
    }
  }
  session.surplus_by_outcome.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    const MarketSurplus s =
        coalition_surplus_market(rule, session.players, ordering, coalition,
                                 coordinated, prior, OutcomeIndex(j));
    session.surplus_by_outcome[j] = s.surplus;
    session.ordering_violation = s.ordering_violation;
  }
  return session;
}

}  // namespace coalition_forge
