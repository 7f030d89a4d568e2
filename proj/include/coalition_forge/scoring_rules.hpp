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

// Strictly proper scoring rules: the quadratic, logarithmic, generalized
// logarithmic and spherical families, plus binary rules built from a convex
// generator G via S(r, E1) = G(r) + (1 - r) G'(r), S(r, E2) = G(r) - r G'(r).

#ifndef COALITION_FORGE_SCORING_RULES_HPP_
#define COALITION_FORGE_SCORING_RULES_HPP_

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coalition_forge/simplex.hpp"

namespace coalition_forge {

enum class RuleKind {
  kQuadratic,
  kLogarithmic,
  kGeneralizedLogarithmic,
  kSpherical,
  kCustomBinary,
  // a_j + b r_j. Not proper; exists so properness checks have a known
  // failing case.
  kLinear,
};

std::string rule_kind_name(RuleKind kind);
std::optional<RuleKind> parse_rule_kind(const std::string& name);

// A continuously differentiable, strictly convex G on an open sub-interval
// of (0, 1), with its derivative supplied in closed form.
struct ConvexGenerator {
  std::string name;
  // Free parameter of the family (e.g. the exponent of a power generator);
  // 0 when the family has none.
  double parameter = 0.0;
  std::function<double(double)> g;
  std::function<double(double)> g_prime;
  double domain_lo = 0.0;
  double domain_hi = 1.0;

  bool in_domain(double r) const { return r > domain_lo && r < domain_hi; }
};

// G(r) = r^2 + (1 - r)^2; reproduces the binary quadratic score.
ConvexGenerator quadratic_generator();
// G(r) = r log r + (1 - r) log(1 - r); reproduces the binary log score.
ConvexGenerator logarithmic_generator();
// G(r) = r^2.
ConvexGenerator square_generator();
// G(r) = r^alpha + (1 - r)^alpha, alpha > 1.
ConvexGenerator power_generator(double alpha);
// Looks up one of the named families above.
ConvexGenerator make_generator(const std::string& name, double parameter);

struct GeneratorCheck {
  bool strictly_increasing_derivative = true;
  bool derivative_matches = true;
  double worst_derivative_error = 0.0;  // relative, see check_generator
  double worst_point = 0.0;
};

// Spot-checks a generator on `points` interior grid points: G' strictly
// increasing, and |(G(x+h) - G(x-h)) / 2h - G'(x)| <= 1e-6 max(1, |G'(x)|)
// with h = 1e-5.
GeneratorCheck check_generator(const ConvexGenerator& gen,
                               std::size_t points = 99);

class ScoringRule {
 public:
  static ScoringRule quadratic(double b = 1.0, std::vector<double> a = {});
  static ScoringRule logarithmic(double b = 1.0, std::vector<double> a = {});
  static ScoringRule generalized_logarithmic(double l, double b = 1.0,
                                             std::vector<double> a = {});
  static ScoringRule spherical(double b = 1.0, std::vector<double> a = {});
  static ScoringRule custom_binary(ConvexGenerator gen, double b = 1.0,
                                   std::vector<double> a = {});
  static ScoringRule linear(double b = 1.0, std::vector<double> a = {});

  RuleKind kind() const noexcept { return kind_; }
  double scale() const noexcept { return b_; }
  double floor() const noexcept { return l_; }
  // Empty means a_j = 0 for every state.
  const std::vector<double>& offsets() const noexcept { return a_; }
  double offset(std::size_t j) const { return a_.empty() ? 0.0 : a_[j]; }
  const ConvexGenerator* generator() const noexcept { return gen_.get(); }

  // Log-type rules: logarithmic, or generalized logarithmic (any l).
  bool is_log_family() const noexcept {
    return kind_ == RuleKind::kLogarithmic ||
           kind_ == RuleKind::kGeneralizedLogarithmic;
  }
  // Floor l used by the log family; 0 for plain logarithmic.
  double log_floor() const noexcept {
    return kind_ == RuleKind::kGeneralizedLogarithmic ? l_ : 0.0;
  }

  // Same family with new affine parameters.
  ScoringRule with_affine(std::vector<double> a, double b) const;

  // Compares family, parameters and generator identity (name, parameter).
  bool operator==(const ScoringRule& other) const;

 private:
  ScoringRule(RuleKind kind, double b, double l, std::vector<double> a,
              std::shared_ptr<const ConvexGenerator> gen);

  RuleKind kind_;
  double b_;
  double l_;
  std::vector<double> a_;
  std::shared_ptr<const ConvexGenerator> gen_;
};

double score(const ScoringRule& rule, const Forecast& report,
             OutcomeIndex outcome);

// Savage's binary construction; r is the probability reported for E1.
double savage_binary_score(const ConvexGenerator& gen, double r,
                           OutcomeIndex outcome);

// sum_j belief_j S(report, E_j). States with zero belief contribute
// nothing and are not evaluated, so a log score is finite whenever the
// report covers the belief's support.
double expected_score(const ScoringRule& rule, const Forecast& report,
                      const Forecast& belief);

struct PropernessReport {
  bool passed = false;
  double truthful_expected = 0.0;
  // max over grid reports r != belief of E[S(r)] - E[S(belief)].
  double max_margin = 0.0;
  std::optional<Forecast> nearest_competitor;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;  // grid reports the rule cannot score
};

// Compares the truthful expected score against every report of the
// resolution-`resolution` simplex lattice.
PropernessReport check_strict_properness(const ScoringRule& rule,
                                         const Forecast& belief,
                                         std::size_t resolution);

struct ScoreRange {
  double lo = 0.0;
  double hi = 0.0;
};

// Range of the rule's scores over the m-simplex and all m outcomes.
ScoreRange score_range(const ScoringRule& rule, std::size_t m);

// Positive affine rescaling whose score range over the m-simplex is [0, 1].
ScoringRule normalize_to_unit_interval(const ScoringRule& rule, std::size_t m);

}  // namespace coalition_forge

#endif  // COALITION_FORGE_SCORING_RULES_HPP_
