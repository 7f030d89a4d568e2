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

#include "coalition_forge/scoring_rules.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "coalition_forge/error.hpp"

namespace coalition_forge {

namespace {

void check_affine(double b, const std::vector<double>& a) {
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw Error(ErrorCode::kInvalidRule, "scale b must be positive");
  }
  for (double v : a) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidRule, "offsets a_j must be finite");
    }
  }
}

double log_checked(double x, std::size_t j) {
  if (!(x > 0.0)) {
    throw Error(ErrorCode::kLogOfZero,
                "log score undefined: report gives state " +
                    std::to_string(j + 1) + " zero probability");
  }
  return std::log(x);
}

}  // namespace

std::string rule_kind_name(RuleKind kind) {
  switch (kind) {
    case RuleKind::kQuadratic: return "quadratic";
    case RuleKind::kLogarithmic: return "logarithmic";
    case RuleKind::kGeneralizedLogarithmic: return "generalized_logarithmic";
    case RuleKind::kSpherical: return "spherical";
    case RuleKind::kCustomBinary: return "custom_binary";
    case RuleKind::kLinear: return "linear";
  }
  return "unknown";
}

std::optional<RuleKind> parse_rule_kind(const std::string& name) {
  if (name == "quadratic" || name == "brier") return RuleKind::kQuadratic;
  if (name == "logarithmic" || name == "log") return RuleKind::kLogarithmic;
  if (name == "generalized_logarithmic" || name == "genlog") {
    return RuleKind::kGeneralizedLogarithmic;
  }
  if (name == "spherical") return RuleKind::kSpherical;
  if (name == "custom_binary") return RuleKind::kCustomBinary;
  if (name == "linear") return RuleKind::kLinear;
  return std::nullopt;
}

// --- generators -------------------------------------------------------------

ConvexGenerator quadratic_generator() {
  ConvexGenerator gen;
  gen.name = "quadratic";
  gen.g = [](double r) { return r * r + (1.0 - r) * (1.0 - r); };
  gen.g_prime = [](double r) { return 4.0 * r - 2.0; };
  return gen;
}

ConvexGenerator logarithmic_generator() {
  ConvexGenerator gen;
  gen.name = "logarithmic";
  gen.g = [](double r) { return r * std::log(r) + (1.0 - r) * std::log1p(-r); };
  gen.g_prime = [](double r) { return std::log(r) - std::log1p(-r); };
  return gen;
}

ConvexGenerator square_generator() {
  ConvexGenerator gen;
  gen.name = "square";
  gen.g = [](double r) { return r * r; };
  gen.g_prime = [](double r) { return 2.0 * r; };
  return gen;
}

ConvexGenerator power_generator(double alpha) {
  if (!(alpha > 1.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::kInvalidRule,
                "power generator needs exponent > 1");
  }
  ConvexGenerator gen;
  gen.name = "power";
  gen.parameter = alpha;
  gen.g = [alpha](double r) {
    return std::pow(r, alpha) + std::pow(1.0 - r, alpha);
  };
  gen.g_prime = [alpha](double r) {
    return alpha * (std::pow(r, alpha - 1.0) - std::pow(1.0 - r, alpha - 1.0));
  };
  return gen;
}

ConvexGenerator make_generator(const std::string& name, double parameter) {
  if (name == "quadratic") return quadratic_generator();
  if (name == "logarithmic") return logarithmic_generator();
  if (name == "square") return square_generator();
  if (name == "power") return power_generator(parameter);
  throw Error(ErrorCode::kInvalidRule, "unknown generator '" + name + "'");
}

GeneratorCheck check_generator(const ConvexGenerator& gen,
                               std::size_t points) {
  GeneratorCheck out;
  constexpr double kStep = 1e-5;
  const double width = gen.domain_hi - gen.domain_lo;
  double prev = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k <= points; ++k) {
    const double x =
        gen.domain_lo + width * static_cast<double>(k) /
                            static_cast<double>(points + 1);
    const double d = gen.g_prime(x);
    if (!(d > prev)) out.strictly_increasing_derivative = false;
    prev = d;
    if (x - kStep <= gen.domain_lo || x + kStep >= gen.domain_hi) continue;
    const double fd = (gen.g(x + kStep) - gen.g(x - kStep)) / (2.0 * kStep);
    const double err = std::abs(fd - d) / std::max(1.0, std::abs(d));
    if (err > out.worst_derivative_error) {
      out.worst_derivative_error = err;
      out.worst_point = x;
    }
  }
  out.derivative_matches = out.worst_derivative_error <= 1e-6;
  return out;
}

// --- rules -------------------------------------------------------------------

ScoringRule::ScoringRule(RuleKind kind, double b, double l,
                         std::vector<double> a,
                         std::shared_ptr<const ConvexGenerator> gen)
    : kind_(kind), b_(b), l_(l), a_(std::move(a)), gen_(std::move(gen)) {
  check_affine(b_, a_);
}

ScoringRule ScoringRule::quadratic(double b, std::vector<double> a) {
  return ScoringRule(RuleKind::kQuadratic, b, 0.0, std::move(a), nullptr);
}

ScoringRule ScoringRule::logarithmic(double b, std::vector<double> a) {
  return ScoringRule(RuleKind::kLogarithmic, b, 0.0, std::move(a), nullptr);
}

ScoringRule ScoringRule::generalized_logarithmic(double l, double b,
                                                 std::vector<double> a) {
  if (!(l >= 0.0) || !std::isfinite(l)) {
    throw Error(ErrorCode::kInvalidRule, "floor l must be non-negative");
  }
  return ScoringRule(RuleKind::kGeneralizedLogarithmic, b, l, std::move(a),
                     nullptr);
}

ScoringRule ScoringRule::spherical(double b, std::vector<double> a) {
  return ScoringRule(RuleKind::kSpherical, b, 0.0, std::move(a), nullptr);
}

ScoringRule ScoringRule::custom_binary(ConvexGenerator gen, double b,
                                       std::vector<double> a) {
  if (!gen.g || !gen.g_prime) {
    throw Error(ErrorCode::kInvalidRule, "generator needs G and G'");
  }
  if (!(gen.domain_lo >= 0.0 && gen.domain_hi <= 1.0 &&
        gen.domain_lo < gen.domain_hi)) {
    throw Error(ErrorCode::kInvalidRule,
                "generator domain must be an interval inside (0, 1)");
  }
  if (!a.empty() && a.size() != 2) {
    throw Error(ErrorCode::kDimensionMismatch,
                "custom binary rules take exactly 2 offsets");
  }
  const GeneratorCheck check = check_generator(gen);
  if (!check.strictly_increasing_derivative) {
    throw Error(ErrorCode::kNonMonotoneGenerator,
                "generator '" + gen.name + "': G' is not strictly increasing");
  }
  if (!check.derivative_matches) {
    throw Error(ErrorCode::kInvalidRule,
                "generator '" + gen.name + "': G' disagrees with G near " +
                    std::to_string(check.worst_point));
  }
  return ScoringRule(RuleKind::kCustomBinary, b, 0.0, std::move(a),
                     std::make_shared<const ConvexGenerator>(std::move(gen)));
}

ScoringRule ScoringRule::linear(double b, std::vector<double> a) {
  return ScoringRule(RuleKind::kLinear, b, 0.0, std::move(a), nullptr);
}

ScoringRule ScoringRule::with_affine(std::vector<double> a, double b) const {
  return ScoringRule(kind_, b, l_, std::move(a), gen_);
}

bool ScoringRule::operator==(const ScoringRule& other) const {
  if (kind_ != other.kind_ || b_ != other.b_ || l_ != other.l_ ||
      a_ != other.a_) {
    return false;
  }
  if (static_cast<bool>(gen_) != static_cast<bool>(other.gen_)) return false;
  if (!gen_) return true;
  return gen_->name == other.gen_->name &&
         gen_->parameter == other.gen_->parameter &&
         gen_->domain_lo == other.gen_->domain_lo &&
         gen_->domain_hi == other.gen_->domain_hi;
}

double savage_binary_score(const ConvexGenerator& gen, double r,
                           OutcomeIndex outcome) {
  outcome.check(2);
  if (!gen.in_domain(r)) {
    std::ostringstream msg;
    msg << "report " << r << " outside generator domain (" << gen.domain_lo
        << ", " << gen.domain_hi << ")";
    throw Error(ErrorCode::kOutOfDomain, msg.str());
  }
  const double g = gen.g(r);
  const double d = gen.g_prime(r);
  return outcome.value() == 0 ? g + (1.0 - r) * d : g - r * d;
}

double score(const ScoringRule& rule, const Forecast& report,
             OutcomeIndex outcome) {
  const std::size_t m = report.size();
  outcome.check(m);
  if (!rule.offsets().empty() && rule.offsets().size() != m) {
    throw Error(ErrorCode::kDimensionMismatch,
                "rule has " + std::to_string(rule.offsets().size()) +
                    " offsets but the report has " + std::to_string(m) +
                    " states");
  }
  const std::size_t j = outcome.value();
  const double a = rule.offset(j);
  const double b = rule.scale();
  switch (rule.kind()) {
    case RuleKind::kQuadratic:
      return a + b * (2.0 * report[j] - squared_norm(report));
    case RuleKind::kLogarithmic:
      return a + b * log_checked(report[j], j);
    case RuleKind::kGeneralizedLogarithmic: {
      const double l = rule.floor();
      double s = log_checked(report[j] + l, j);
      if (l > 0.0) {
        double sum = 0.0;
        for (std::size_t k = 0; k < m; ++k) sum += std::log(report[k] + l);
        s += l * sum;
      }
      return a + b * s;
    }
    case RuleKind::kSpherical:
      return a + b * report[j] / two_norm(report);
    case RuleKind::kCustomBinary:
      if (m != 2) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "custom binary rules score 2-state events only");
      }
      return a + b * savage_binary_score(*rule.generator(), report[0], outcome);
    case RuleKind::kLinear:
      return a + b * report[j];
  }
  throw Error(ErrorCode::kInvalidRule, "unknown rule kind");
}

double expected_score(const ScoringRule& rule, const Forecast& report,
                      const Forecast& belief) {
  if (report.size() != belief.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "report and belief have different numbers of states");
  }
  double total = 0.0;
  for (std::size_t j = 0; j < belief.size(); ++j) {
    if (belief[j] == 0.0) continue;
    total += belief[j] * score(rule, report, OutcomeIndex(j));
  }
  return total;
}

PropernessReport check_strict_properness(const ScoringRule& rule,
                                         const Forecast& belief,
                                         std::size_t resolution) {
  if (resolution < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "properness check needs resolution >= 2");
  }
  PropernessReport report;
  report.truthful_expected = expected_score(rule, belief, belief);
  report.max_margin = -std::numeric_limits<double>::infinity();
  const std::size_t m = belief.size();
  std::vector<double> best;
  for_each_grid_point(m, resolution, [&](std::span<const double> point) {
    double dist = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      dist = std::max(dist, std::abs(point[j] - belief[j]));
    }
    if (dist <= 1e-12) return;
    const Forecast candidate = Forecast::validate(point);
    double value = 0.0;
    try {
      value = expected_score(rule, candidate, belief);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kLogOfZero ||
          e.code() == ErrorCode::kOutOfDomain) {
        ++report.skipped;
        return;
      }
      throw;
    }
    ++report.evaluated;
    const double margin = value - report.truthful_expected;
    if (margin > report.max_margin) {
      report.max_margin = margin;
      best.assign(point.begin(), point.end());
    }
  });
  if (!best.empty()) report.nearest_competitor = Forecast::validate(best);
  report.passed = report.evaluated > 0 && report.max_margin < 0.0;
  return report;
}

ScoreRange score_range(const ScoringRule& rule, std::size_t m) {
  if (m < 2) throw Error(ErrorCode::kTooFewStates, "score_range needs m >= 2");
  if (!rule.offsets().empty() && rule.offsets().size() != m) {
    throw Error(ErrorCode::kDimensionMismatch,
                "rule offsets do not match the number of states");
  }
  // Range of the unshifted, unscaled score; it is the same for every state.
  ScoreRange raw;
  switch (rule.kind()) {
    case RuleKind::kQuadratic:
      // 2 r_j - |r|^2 peaks at 1 on vertex e_j and bottoms at -1 on any
      // other vertex.
      raw = {-1.0, 1.0};
      break;
    case RuleKind::kSpherical:
    case RuleKind::kLinear:
      raw = {0.0, 1.0};
      break;
    case RuleKind::kLogarithmic:
      throw Error(ErrorCode::kUnboundedRule,
                  "the logarithmic score has no lower bound");
    case RuleKind::kGeneralizedLogarithmic: {
      const double l = rule.floor();
      if (l == 0.0) {
        throw Error(ErrorCode::kUnboundedRule,
                    "generalized logarithmic score with l = 0 has no lower "
                    "bound");
      }
      // Concave in r: both extremes sit on vertices. On e_j the observed
      // term is log(1 + l), on any other vertex it is log(l); the shared
      // sum is log(1 + l) + (m - 1) log(l) in both cases.
      const double shared =
          l * (std::log1p(l) + static_cast<double>(m - 1) * std::log(l));
      raw = {std::log(l) + shared, std::log1p(l) + shared};
      break;
    }
    case RuleKind::kCustomBinary: {
      if (m != 2) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "custom binary rules score 2-state events only");
      }
      const ConvexGenerator& gen = *rule.generator();
      constexpr int kSteps = 200;
      raw = {std::numeric_limits<double>::infinity(),
             -std::numeric_limits<double>::infinity()};
      // The closed domain: extremes sit at the endpoints, where a generator
      // with an infinite slope (the logit one) makes the rule unbounded.
      for (int k = 0; k <= kSteps; ++k) {
        const double r = gen.domain_lo + (gen.domain_hi - gen.domain_lo) *
                                             static_cast<double>(k) / kSteps;
        const double g = gen.g(r);
        const double d = gen.g_prime(r);
        for (const double s : {g + (1.0 - r) * d, g - r * d}) {
          if (!std::isfinite(s)) {
            raw = {-std::numeric_limits<double>::infinity(),
                   std::numeric_limits<double>::infinity()};
            break;
          }
          raw.lo = std::min(raw.lo, s);
          raw.hi = std::max(raw.hi, s);
        }
      }
      if (!std::isfinite(raw.lo) || !std::isfinite(raw.hi)) {
        throw Error(ErrorCode::kUnboundedRule,
                    "generator scores are not finite on its domain");
      }
      break;
    }
  }
  double a_min = 0.0;
  double a_max = 0.0;
  if (!rule.offsets().empty()) {
    const auto [lo_it, hi_it] =
        std::minmax_element(rule.offsets().begin(), rule.offsets().end());
    a_min = *lo_it;
    a_max = *hi_it;
  }
  return {a_min + rule.scale() * raw.lo, a_max + rule.scale() * raw.hi};
}

ScoringRule normalize_to_unit_interval(const ScoringRule& rule,
                                       std::size_t m) {
  const ScoreRange range = score_range(rule, m);
  const double width = range.hi - range.lo;
  std::vector<double> a(m);
  for (std::size_t j = 0; j < m; ++j) {
    a[j] = (rule.offset(j) - range.lo) / width;
  }
  return rule.with_affine(std::move(a), rule.scale() / width);
}

}  // namespace coalition_forge
