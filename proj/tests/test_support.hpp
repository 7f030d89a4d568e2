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

// Shared test helpers: random instance generation (std::mt19937_64, kept
// apart from the library's own generator) and direct-formula oracles that
// do not go through the library's rule dispatch.

#ifndef COALITION_FORGE_TESTS_TEST_SUPPORT_HPP_
#define COALITION_FORGE_TESTS_TEST_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <random>
#include <vector>

#include "coalition_forge/arbitrage.hpp"
#include "coalition_forge/scoring_rules.hpp"
#include "coalition_forge/simplex.hpp"

namespace coalition_forge::testing {

inline Forecast F(std::vector<double> v) { return Forecast::validate(v); }

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

class Instances {
 public:
  explicit Instances(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(gen_);
  }

  // Interior point of the simplex, entries at least `floor`.
  Forecast interior(std::size_t m, double floor = 0.01) {
    std::vector<double> v(m);
    double total = 0.0;
    for (double& x : v) {
      x = -std::log(uniform(1e-12, 1.0));
      total += x;
    }
    for (double& x : v) x = floor + (1.0 - m * floor) * x / total;
    fix_sum(v);
    return Forecast::validate(v);
  }

  std::vector<Player> players(std::size_t n, std::size_t m,
                              bool unit_wagers = false) {
    std::vector<Player> out;
    for (std::size_t i = 0; i < n; ++i) {
      const double w = unit_wagers ? 1.0 : uniform(0.2, 5.0);
      out.emplace_back(interior(m), w);
    }
    return out;
  }

  std::vector<Player> with_reports(std::vector<Player> ps, std::size_t m) {
    for (Player& p : ps) p = p.with_report(interior(m));
    return ps;
  }

  // First c indices of a random permutation of 0..n-1.
  Coalition coalition(std::size_t n, std::size_t c) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), gen_);
    idx.resize(c);
    return Coalition(idx);
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  static void fix_sum(std::vector<double>& v) {
    double rest = 0.0;
    for (std::size_t j = 1; j < v.size(); ++j) rest += v[j];
    v[0] = 1.0 - rest;
  }

  std::mt19937_64 gen_;
};

// Direct formulas, written out independently of the library.
namespace oracle {

inline double sq(const std::vector<double>& r) {
  double s = 0.0;
  for (double x : r) s += x * x;
  return s;
}

inline double quadratic(const std::vector<double>& r, std::size_t j) {
  return 2.0 * r[j] - sq(r);
}

inline double spherical(const std::vector<double>& r, std::size_t j) {
  return r[j] / std::sqrt(sq(r));
}

inline double genlog(const std::vector<double>& r, std::size_t j, double l) {
  double s = std::log(r[j] + l);
  for (double x : r) s += l * std::log(x + l);
  return s;
}

inline std::vector<double> vec(const Forecast& f) {
  return std::vector<double>(f.begin(), f.end());
}

// Traditional-contract surplus, one entry per outcome, from a score
// callback of (report, outcome).
template <typename Score>
std::vector<double> surplus(std::span<const Player> players,
                            const Coalition& c, const Forecast& q,
                            Score&& s) {
  const std::size_t m = q.size();
  std::vector<double> out(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i : c.members()) {
      out[j] += players[i].wager() *
                (s(vec(q), j) - s(vec(players[i].belief()), j));
    }
  }
  return out;
}

}  // namespace oracle

}  // namespace coalition_forge::testing

#endif  // COALITION_FORGE_TESTS_TEST_SUPPORT_HPP_
