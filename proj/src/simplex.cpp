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

#include "coalition_forge/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "coalition_forge/error.hpp"

namespace coalition_forge {

Forecast Forecast::validate(std::span<const double> raw, double tol) {
  if (raw.size() < 2) {
    throw Error(ErrorCode::kTooFewStates,
                "a forecast needs at least 2 states, got " +
                    std::to_string(raw.size()));
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < raw.size(); ++j) {
    const double v = raw[j];
    if (!std::isfinite(v) || v < 0.0) {
      std::ostringstream msg;
      msg << "entry " << (j + 1) << " is " << v
          << "; probabilities must be finite and non-negative";
      throw Error(ErrorCode::kNegativeEntry, msg.str());
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > tol) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "entries sum to " << sum << ", not 1 (tolerance " << tol << ")";
    throw Error(ErrorCode::kSumOutOfTolerance, msg.str());
  }
  return Forecast(std::vector<double>(raw.begin(), raw.end()));
}

Forecast Forecast::uniform(std::size_t m) {
  if (m < 2) {
    throw Error(ErrorCode::kTooFewStates, "uniform forecast needs m >= 2");
  }
  return Forecast(std::vector<double>(m, 1.0 / static_cast<double>(m)));
}

Forecast Forecast::vertex(std::size_t m, std::size_t j) {
  if (m < 2) {
    throw Error(ErrorCode::kTooFewStates, "vertex forecast needs m >= 2");
  }
  OutcomeIndex(j).check(m);
  std::vector<double> probs(m, 0.0);
  probs[j] = 1.0;
  return Forecast(std::move(probs));
}

OutcomeIndex OutcomeIndex::from_one_based(std::size_t j) {
  if (j == 0) {
    throw Error(ErrorCode::kOutcomeOutOfRange,
                "outcome indices are 1-based; got 0");
  }
  return OutcomeIndex(j - 1);
}

void OutcomeIndex::check(std::size_t m) const {
  if (j_ >= m) {
    throw Error(ErrorCode::kOutcomeOutOfRange,
                "outcome " + std::to_string(j_ + 1) + " outside 1.." +
                    std::to_string(m));
  }
}

double squared_norm(const Forecast& f) {
  double s = 0.0;
  for (double v : f) s += v * v;
  return s;
}

double two_norm(const Forecast& f) { return std::sqrt(squared_norm(f)); }

double max_abs_diff(const Forecast& a, const Forecast& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "forecasts have different numbers of states");
  }
  double d = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    d = std::max(d, std::abs(a[j] - b[j]));
  }
  return d;
}

Forecast weighted_mean(std::span<const Forecast> forecasts,
                       std::span<const double> weights) {
  if (forecasts.empty() || forecasts.size() != weights.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "weighted_mean needs one weight per forecast (" +
                    std::to_string(forecasts.size()) + " forecasts, " +
                    std::to_string(weights.size()) + " weights)");
  }
  const std::size_t m = forecasts.front().size();
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) {
      throw Error(ErrorCode::kNonPositiveWeight,
                  "weight " + std::to_string(i + 1) + " must be positive");
    }
    if (forecasts[i].size() != m) {
      throw Error(ErrorCode::kLengthMismatch,
                  "forecast " + std::to_string(i + 1) +
                      " has a different number of states");
    }
    total += weights[i];
  }
  std::vector<double> out(m, 0.0);
  for (std::size_t i = 0; i < forecasts.size(); ++i) {
    const double share = weights[i] / total;
    for (std::size_t j = 0; j < m; ++j) out[j] += share * forecasts[i][j];
  }
  return Forecast::validate(out);
}

std::size_t simplex_grid_size(std::size_t m, std::size_t resolution) {
  // C(resolution + m - 1, m - 1), built incrementally to stay exact.
  std::size_t k = m - 1;
  std::size_t result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    result = result * (resolution + i) / i;
  }
  return result;
}

std::vector<Forecast> simplex_grid(std::size_t m, std::size_t resolution) {
  if (m < 2) {
    throw Error(ErrorCode::kTooFewStates, "simplex_grid needs m >= 2");
  }
  if (resolution < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "simplex_grid needs resolution >= 1");
  }
  std::vector<Forecast> out;
  out.reserve(simplex_grid_size(m, resolution));
  for_each_grid_point(m, resolution, [&](std::span<const double> p) {
    out.push_back(Forecast::validate(p));
  });
  return out;
}

}  // namespace coalition_forge
