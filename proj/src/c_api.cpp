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

#include "coalition_forge/c_api.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "coalition_forge/arbitrage.hpp"
#include "coalition_forge/commands.hpp"
#include "coalition_forge/error.hpp"
#include "coalition_forge/mechanisms.hpp"
#include "coalition_forge/scenario.hpp"
#include "coalition_forge/scoring_rules.hpp"

namespace cf = coalition_forge;

struct cf_scenario {
  cf::Scenario value;
};

struct cf_rule {
  cf::ScoringRule value;
};

namespace {

thread_local std::string g_last_error;
thread_local std::string g_last_error_name;

void set_error(std::string name, std::string message) {
  g_last_error_name = std::move(name);
  g_last_error = std::move(message);
}

cf_status status_for(cf::ErrorCode code) {
  switch (code) {
    case cf::ErrorCode::kUnsupportedRule:
    case cf::ErrorCode::kUnsupportedMechanism:
    case cf::ErrorCode::kUnboundedRule:
      return CF_UNSUPPORTED;
    case cf::ErrorCode::kLogOfZero:
    case cf::ErrorCode::kOutOfDomain:
    case cf::ErrorCode::kNoConvergence:
    case cf::ErrorCode::kNonMonotoneGenerator:
    case cf::ErrorCode::kDegenerateBelief:
      return CF_NUMERIC;
    case cf::ErrorCode::kIoError:
      return CF_IO;
    default:
      return CF_INVALID;
  }
}

template <typename F>
cf_status guarded(F&& body) {
  try {
    body();
    return CF_OK;
  } catch (const cf::Error& e) {
    set_error(std::string(cf::error_code_name(e.code())), e.what());
    return status_for(e.code());
  } catch (const std::bad_alloc&) {
    set_error("OutOfMemory", "allocation failed");
    return CF_INTERNAL;
  } catch (const std::exception& e) {
    set_error("Internal", e.what());
    return CF_INTERNAL;
  } catch (...) {
    set_error("Internal", "unknown exception");
    return CF_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) throw cf::Error(cf::ErrorCode::kInvalidArgument, what);
}

std::vector<double> offsets_of(const double* a, std::size_t m) {
  return a ? std::vector<double>(a, a + m) : std::vector<double>{};
}

std::vector<cf::Player> make_players(const double* beliefs,
                                     const double* wagers, std::size_t n,
                                     std::size_t m, bool as_reports) {
  require(beliefs != nullptr, "beliefs is null");
  std::vector<cf::Player> players;
  players.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const cf::Forecast f = cf::Forecast::validate({beliefs + i * m, m});
    const double w = wagers ? wagers[i] : 1.0;
    players.emplace_back(f, w, as_reports ? std::optional<cf::Forecast>(f)
                                          : std::nullopt);
  }
  return players;
}

cf::Coalition make_coalition(const std::size_t* members, std::size_t c,
                             std::size_t n) {
  require(members != nullptr, "members is null");
  cf::Coalition coalition(std::vector<std::size_t>(members, members + c));
  coalition.check(n, 2);
  return coalition;
}

}  // namespace

extern "C" {

const char* cf_version(void) { return COALITION_FORGE_VERSION; }

const char* cf_last_error(void) { return g_last_error.c_str(); }

const char* cf_last_error_name(void) { return g_last_error_name.c_str(); }

void cf_string_free(char* s) { std::free(s); }

cf_status cf_scenario_load(const char* path, cf_scenario** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new cf_scenario{cf::load_scenario(path)};
  });
}

cf_status cf_scenario_parse(const char* json_text, cf_scenario** out) {
  return guarded([&] {
    require(json_text && out, "null argument");
    *out = new cf_scenario{cf::parse_scenario_text(json_text)};
  });
}

void cf_scenario_free(cf_scenario* scenario) { delete scenario; }

cf_status cf_scenario_canonical_json(const cf_scenario* scenario, char** out) {
  return guarded([&] {
    require(scenario && out, "null argument");
    *out = dup_string(cf::canonical_json(scenario->value));
  });
}

cf_status cf_scenario_digest(const cf_scenario* scenario, char** out) {
  return guarded([&] {
    require(scenario && out, "null argument");
    *out = dup_string(cf::scenario_digest(scenario->value));
  });
}

void cf_command_options_init(cf_command_options* opts) {
  if (!opts) return;
  opts->outcome = 0;
  opts->format = CF_FORMAT_TABLE;
  opts->resolution = 50;
  opts->has_seed = 0;
  opts->seed = 0;
  opts->out_path = nullptr;
}

cf_status cf_run_command(const char* command, const cf_scenario* scenario,
                         const cf_command_options* opts, char** stdout_text,
                         char** stderr_text) {
  cf::CommandOutput result;
  const cf_status st = guarded([&] {
    require(command && scenario, "null argument");
    cf::CommandOptions o;
    if (opts) {
      if (opts->outcome) o.outcome = opts->outcome;
      switch (opts->format) {
        case CF_FORMAT_CSV: o.format = cf::OutputFormat::kCsv; break;
        case CF_FORMAT_JSON: o.format = cf::OutputFormat::kJson; break;
        default: o.format = cf::OutputFormat::kTable; break;
      }
      require(opts->resolution >= 2, "resolution must be at least 2");
      o.resolution = opts->resolution;
      if (opts->has_seed) o.seed = opts->seed;
      if (opts->out_path) o.out_path = std::string(opts->out_path);
    }
    result = cf::run_command(command, scenario->value, o);
    if (stdout_text) *stdout_text = dup_string(result.text);
    if (stderr_text) *stderr_text = dup_string(result.error);
  });
  if (st != CF_OK) return st;
  if (result.exit_code == cf::kExitValidation) {
    set_error("CommandFailed", result.error);
  }
  return static_cast<cf_status>(result.exit_code);
}

cf_status cf_rule_create(cf_rule_kind kind, double b, double l,
                         const double* offsets, std::size_t m, cf_rule** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    std::vector<double> a = offsets_of(offsets, m);
    switch (kind) {
      case CF_RULE_QUADRATIC:
        *out = new cf_rule{cf::ScoringRule::quadratic(b, a)};
        break;
      case CF_RULE_LOGARITHMIC:
        *out = new cf_rule{cf::ScoringRule::logarithmic(b, a)};
        break;
      case CF_RULE_GENERALIZED_LOGARITHMIC:
        *out = new cf_rule{cf::ScoringRule::generalized_logarithmic(l, b, a)};
        break;
      case CF_RULE_SPHERICAL:
        *out = new cf_rule{cf::ScoringRule::spherical(b, a)};
        break;
      case CF_RULE_LINEAR:
        *out = new cf_rule{cf::ScoringRule::linear(b, a)};
        break;
      case CF_RULE_CUSTOM_BINARY:
        throw cf::Error(cf::ErrorCode::kInvalidArgument,
                        "use cf_rule_create_custom_binary");
      default:
        throw cf::Error(cf::ErrorCode::kInvalidRule, "unknown rule kind");
    }
  });
}

cf_status cf_rule_create_custom_binary(const char* generator, double parameter,
                                       double b, const double* offsets,
                                       cf_rule** out) {
  return guarded([&] {
    require(generator && out, "null argument");
    *out = new cf_rule{cf::ScoringRule::custom_binary(
        cf::make_generator(generator, parameter), b, offsets_of(offsets, 2))};
  });
}

cf_status cf_rule_normalize(const cf_rule* rule, std::size_t m, cf_rule** out) {
  return guarded([&] {
    require(rule && out, "null argument");
    *out = new cf_rule{cf::normalize_to_unit_interval(rule->value, m)};
  });
}

void cf_rule_free(cf_rule* rule) { delete rule; }

cf_status cf_score(const cf_rule* rule, const double* report, std::size_t m,
                   std::size_t outcome, double* out) {
  return guarded([&] {
    require(rule && report && out, "null argument");
    const cf::Forecast r = cf::Forecast::validate({report, m});
    const cf::OutcomeIndex e(outcome);
    e.check(m);
    *out = cf::score(rule->value, r, e);
  });
}

cf_status cf_expected_score(const cf_rule* rule, const double* report,
                            const double* belief, std::size_t m, double* out) {
  return guarded([&] {
    require(rule && report && belief && out, "null argument");
    *out = cf::expected_score(
        rule->value, cf::Forecast::validate({report, m}),
        cf::Forecast::validate({belief, m}));
  });
}

cf_status cf_arbitrage(const cf_rule* rule, const double* beliefs,
                       const double* wagers, std::size_t n, std::size_t m,
                       const std::size_t* members, std::size_t c,
                       double* q_out, double* surplus_out) {
  cf::ArbitrageResult result{cf::Forecast::uniform(2), {}, false, false};
  const cf_status st = guarded([&] {
    require(rule != nullptr, "null argument");
    const auto players = make_players(beliefs, wagers, n, m, false);
    const cf::Coalition coalition = make_coalition(members, c, n);
    result = cf::arbitrage_report(rule->value, players, coalition);
    for (std::size_t j = 0; j < m; ++j) {
      if (q_out) q_out[j] = result.q[j];
      if (surplus_out) surplus_out[j] = result.surplus_by_outcome[j];
    }
  });
  if (st == CF_OK && result.agreement) {
    set_error("NoArbitrage", "coalition members agree");
    return CF_NO_ARBITRAGE;
  }
  return st;
}

cf_status cf_closed_form_surplus(const cf_rule* rule, const double* beliefs,
                                 const double* wagers, std::size_t n,
                                 std::size_t m, const std::size_t* members,
                                 std::size_t c, double* out) {
  return guarded([&] {
    require(rule && out, "null argument");
    const auto players = make_players(beliefs, wagers, n, m, false);
    const cf::Coalition coalition = make_coalition(members, c, n);
    *out = cf::closed_form_surplus(rule->value, players, coalition);
  });
}

cf_status cf_competitive_payments(const cf_rule* rule, const double* reports,
                                  const double* wagers, std::size_t n,
                                  std::size_t m, std::size_t outcome,
                                  double* payments_out) {
  return guarded([&] {
    require(rule && payments_out, "null argument");
    const auto players = make_players(reports, wagers, n, m, true);
    const cf::OutcomeIndex e(outcome);
    e.check(m);
    const auto pay = cf::competitive_payments(rule->value, players, e);
    for (std::size_t i = 0; i < n; ++i) payments_out[i] = pay[i];
  });
}

}  // extern "C"
