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

// Probability-vector primitives shared by every other module.

#ifndef COALITION_FORGE_SIMPLEX_HPP_
#define COALITION_FORGE_SIMPLEX_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace coalition_forge {

// Absolute tolerance on |sum - 1| accepted for a probability vector.
inline constexpr double kSimplexTolerance = 1e-9;

// A point of the probability simplex over m >= 2 outcome states. Instances
// are only produced by `Forecast::validate`, so holding one means every
// entry is non-negative and the entries sum to one within tolerance. Entries
// are stored exactly as given; nothing is renormalized.
class Forecast {
 public:
  static Forecast validate(std::span<const double> raw,
                           double tol = kSimplexTolerance);
  // Uniform distribution over m states.
  static Forecast uniform(std::size_t m);
  // Point mass on state j (0-based).
  static Forecast vertex(std::size_t m, std::size_t j);

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t j) const { return probs_[j]; }
  std::span<const double> probs() const noexcept { return probs_; }
  auto begin() const noexcept { return probs_.begin(); }
  auto end() const noexcept { return probs_.end(); }

  bool operator==(const Forecast&) const = default;

 private:
  explicit Forecast(std::vector<double> probs) : probs_(std::move(probs)) {}
  std::vector<double> probs_;
};

// Index of an outcome state. Stored 0-based; files and messages use the
// 1-based E_1..E_m convention, converted at the serialization boundary.
class OutcomeIndex {
 public:
  constexpr explicit OutcomeIndex(std::size_t zero_based) : j_(zero_based) {}
  static OutcomeIndex from_one_based(std::size_t j);

  constexpr std::size_t value() const noexcept { return j_; }
  constexpr std::size_t one_based() const noexcept { return j_ + 1; }

  // Throws kOutcomeOutOfRange unless the index addresses a state of an
  // m-state event.
  void check(std::size_t m) const;

  constexpr bool operator==(const OutcomeIndex&) const = default;

 private:
  std::size_t j_;
};

double two_norm(const Forecast& f);
double squared_norm(const Forecast& f);

// Largest absolute coordinate difference.
double max_abs_diff(const Forecast& a, const Forecast& b);

// Convex combination sum_i (w_i / sum w) f_i.
Forecast weighted_mean(std::span<const Forecast> forecasts,
                       std::span<const double> weights);

// Every lattice point with coordinates k_j / resolution. The number of
// points is C(resolution + m - 1, m - 1); order is lexicographic in
// (k_1, ..., k_m) ascending.
std::vector<Forecast> simplex_grid(std::size_t m, std::size_t resolution);

// Visits the same lattice as `simplex_grid` without materializing it. The
// callback receives the point as a span valid only for the call.
template <typename Visitor>
void for_each_grid_point(std::size_t m, std::size_t resolution,
                         Visitor&& visit);

std::size_t simplex_grid_size(std::size_t m, std::size_t resolution);

// --- implementation ----------------------------------------------------------

namespace detail {

template <typename Visitor>
void grid_recurse(std::vector<std::size_t>& counts, std::vector<double>& point,
                  std::size_t pos, std::size_t remaining,
                  std::size_t resolution, Visitor& visit) {
  const std::size_t m = counts.size();
  if (pos + 1 == m) {
    counts[pos] = remaining;
    point[pos] = static_cast<double>(remaining) /
                 static_cast<double>(resolution);
    visit(std::span<const double>(point));
    return;
  }
  for (std::size_t k = 0; k <= remaining; ++k) {
    counts[pos] = k;
    point[pos] = static_cast<double>(k) / static_cast<double>(resolution);
    grid_recurse(counts, point, pos + 1, remaining - k, resolution, visit);
  }
}

}  // namespace detail

template <typename Visitor>
void for_each_grid_point(std::size_t m, std::size_t resolution,
                         Visitor&& visit) {
  if (m == 0 || resolution == 0) return;
  std::vector<std::size_t> counts(m, 0);
  std::vector<double> point(m, 0.0);
  detail::grid_recurse(counts, point, 0, resolution, resolution, visit);
}

}  // namespace coalition_forge

#endif  // COALITION_FORGE_SIMPLEX_HPP_
