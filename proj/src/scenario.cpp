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

#include "coalition_forge/scenario.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "coalition_forge/error.hpp"

namespace coalition_forge {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw Error(ErrorCode::kScenarioInvalid, path + ": " + message);
}

std::string at(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string at(const std::string& path, std::size_t one_based) {
  return path + "[" + std::to_string(one_based) + "]";
}

const json& require(const json& doc, const std::string& key,
                    const std::string& path) {
  if (!doc.is_object()) fail(path.empty() ? "<root>" : path, "expected an object");
  const auto it = doc.find(key);
  if (it == doc.end()) fail(at(path, key), "missing");
  return *it;
}

const json* optional_field(const json& doc, const std::string& key) {
  const auto it = doc.find(key);
  return it == doc.end() || it->is_null() ? nullptr : &*it;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

std::size_t as_count(const json& v, const std::string& path) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    fail(path, "expected a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

std::vector<double> as_numbers(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    out.push_back(as_number(v[k], at(path, k + 1)));
  }
  return out;
}

Forecast as_forecast(const json& v, const std::string& path, std::size_t m) {
  const std::vector<double> raw = as_numbers(v, path);
  if (raw.size() != m) {
    fail(path, "has " + std::to_string(raw.size()) + " entries, event has " +
                   std::to_string(m) + " states");
  }
  try {
    return Forecast::validate(raw);
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

// 1-based index list -> 0-based.
std::vector<std::size_t> as_indices(const json& v, const std::string& path,
                                    std::size_t n) {
  if (!v.is_array()) fail(path, "expected an array of 1-based indices");
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const std::size_t idx = as_count(v[k], at(path, k + 1));
    if (idx < 1 || idx > n) {
      fail(at(path, k + 1), "index " + std::to_string(idx) +
                                " is outside 1.." + std::to_string(n));
    }
    out.push_back(idx - 1);
  }
  return out;
}

json indices_to_json(const std::vector<std::size_t>& zero_based) {
  json out = json::array();
  for (std::size_t i : zero_based) out.push_back(i + 1);
  return out;
}

json forecast_to_json(const Forecast& f) {
  return json(std::vector<double>(f.begin(), f.end()));
}

const char* mode_name(SimulationMode mode) {
  switch (mode) {
    case SimulationMode::kSweep: return "sweep";
    case SimulationMode::kIntermediary: return "intermediary";
    case SimulationMode::kMarketSession: return "market_session";
  }
  return "sweep";
}

MechanismSpec mechanism_from_json(const json& doc, const std::string& path,
                                  ScoringRule rule, std::size_t m,
                                  std::size_t n) {
  MechanismSpec spec;
  spec.rule = std::move(rule);
  const json* obj = nullptr;
  std::string kind;
  if (doc.is_string()) {
    kind = doc.get<std::string>();
  } else if (doc.is_object()) {
    obj = &doc;
    kind = as_string(require(doc, "kind", path), at(path, "kind"));
  } else {
    fail(path, "expected a mechanism name or object");
  }
  if (kind == "traditional") {
    spec.kind = MechanismKind::kTraditional;
  } else if (kind == "competitive" || kind == "self_financed_competitive") {
    spec.kind = MechanismKind::kSelfFinancedCompetitive;
  } else if (kind == "kilgour_gerchak") {
    spec.kind = MechanismKind::kSelfFinancedCompetitive;
    spec.preset = MechanismPreset::kKilgourGerchak;
  } else if (kind == "lambert") {
    spec.kind = MechanismKind::kSelfFinancedCompetitive;
    spec.preset = MechanismPreset::kLambert;
  } else if (kind == "market" || kind == "market_scoring") {
    spec.kind = MechanismKind::kMarketScoring;
  } else {
    fail(obj ? at(path, "kind") : path, "unknown mechanism '" + kind + "'");
  }
  if (obj) {
    if (const json* prior = optional_field(*obj, "prior")) {
      if (spec.kind != MechanismKind::kMarketScoring) {
        fail(at(path, "prior"), "only market scoring takes a prior");
      }
      spec.market_prior = as_forecast(*prior, at(path, "prior"), m);
    }
    if (const json* ordering = optional_field(*obj, "ordering")) {
      if (spec.kind != MechanismKind::kMarketScoring) {
        fail(at(path, "ordering"), "only market scoring takes an ordering");
      }
      auto order = as_indices(*ordering, at(path, "ordering"), n);
      std::set<std::size_t> unique(order.begin(), order.end());
      if (order.size() != n || unique.size() != n) {
        fail(at(path, "ordering"),
             "must list each of the " + std::to_string(n) + " players once");
      }
      spec.ordering = std::move(order);
    }
  }
  return spec;
}

json mechanism_to_json(const MechanismSpec& spec) {
  json out = json::object();
  out["kind"] = mechanism_name(spec);
  if (spec.market_prior) out["prior"] = forecast_to_json(*spec.market_prior);
  if (spec.ordering) out["ordering"] = indices_to_json(*spec.ordering);
  return out;
}

BeliefSampler sampler_from_json(const json& doc, const std::string& path) {
  const std::string kind =
      as_string(require(doc, "kind", path), at(path, "kind"));
  try {
    if (kind == "beta" || kind == "beta_binary") {
      return BeliefSampler(BetaBinary{
          as_number(require(doc, "alpha", path), at(path, "alpha")),
          as_number(require(doc, "beta", path), at(path, "beta"))});
    }
    if (kind == "dirichlet") {
      return BeliefSampler(DirichletM{
          as_numbers(require(doc, "alpha", path), at(path, "alpha"))});
    }
    if (kind == "mixture") {
      const json& points = require(doc, "points", path);
      if (!points.is_array() || points.empty()) {
        fail(at(path, "points"), "expected a non-empty array of forecasts");
      }
      FiniteMixture mix;
      const std::size_t m = points[0].is_array() ? points[0].size() : 0;
      for (std::size_t k = 0; k < points.size(); ++k) {
        mix.points.push_back(
            as_forecast(points[k], at(at(path, "points"), k + 1), m));
      }
      mix.weights = as_numbers(require(doc, "weights", path), at(path, "weights"));
      return BeliefSampler(std::move(mix));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kScenarioInvalid) throw;
    fail(path, e.what());
  }
  fail(at(path, "kind"), "unknown sampler '" + kind + "'");
}

json sampler_to_json(const BeliefSampler& sampler) {
  json out = json::object();
  if (const auto* beta = std::get_if<BetaBinary>(&sampler.params())) {
    out["kind"] = "beta";
    out["alpha"] = beta->alpha;
    out["beta"] = beta->beta;
  } else if (const auto* dir = std::get_if<DirichletM>(&sampler.params())) {
    out["kind"] = "dirichlet";
    out["alpha"] = dir->alpha;
  } else {
    const auto& mix = std::get<FiniteMixture>(sampler.params());
    out["kind"] = "mixture";
    out["points"] = json::array();
    for (const Forecast& p : mix.points) out["points"].push_back(forecast_to_json(p));
    out["weights"] = mix.weights;
  }
  return out;
}

SimulationSpec simulation_from_json(const json& doc, const std::string& path,
                                    std::size_t m) {
  if (!doc.is_object()) fail(path, "expected an object");
  SimulationSpec sim;
  if (const json* mode = optional_field(doc, "mode")) {
    const std::string name = as_string(*mode, at(path, "mode"));
    if (name == "sweep") {
      sim.mode = SimulationMode::kSweep;
    } else if (name == "intermediary") {
      sim.mode = SimulationMode::kIntermediary;
    } else if (name == "market_session") {
      sim.mode = SimulationMode::kMarketSession;
    } else {
      fail(at(path, "mode"), "unknown simulation mode '" + name + "'");
    }
  }
  if (const json* s = optional_field(doc, "sampler")) {
    sim.sampler = sampler_from_json(*s, at(path, "sampler"));
    if (sim.sampler->states() != m) {
      fail(at(path, "sampler"), "draws " + std::to_string(sim.sampler->states()) +
                                    "-state beliefs, event has " +
                                    std::to_string(m) + " states");
    }
  }
  if (const json* v = optional_field(doc, "n")) sim.n = as_count(*v, at(path, "n"));
  if (const json* v = optional_field(doc, "fractions")) {
    sim.fractions = as_numbers(*v, at(path, "fractions"));
    for (std::size_t k = 0; k < sim.fractions.size(); ++k) {
      const double f = sim.fractions[k];
      if (!(f > 0.0 && f <= 1.0)) {
        fail(at(at(path, "fractions"), k + 1), "must lie in (0, 1]");
      }
    }
  }
  if (const json* v = optional_field(doc, "trials")) {
    sim.trials = as_count(*v, at(path, "trials"));
  }
  if (const json* v = optional_field(doc, "seed")) {
    if (!v->is_number_unsigned()) {
      fail(at(path, "seed"), "expected an unsigned 64-bit integer");
    }
    sim.seed = v->get<std::uint64_t>();
  }
  if (const json* v = optional_field(doc, "truth")) {
    sim.truth = as_forecast(*v, at(path, "truth"), m);
  }
  if (const json* v = optional_field(doc, "coalition_truthful")) {
    if (!v->is_boolean()) fail(at(path, "coalition_truthful"), "expected a boolean");
    sim.coalition_truthful = v->get<bool>();
  }
  if (sim.mode == SimulationMode::kSweep) {
    if (!sim.sampler) fail(at(path, "sampler"), "missing (required for sweeps)");
    if (sim.fractions.empty()) fail(at(path, "fractions"), "missing or empty");
    if (sim.trials < 1) fail(at(path, "trials"), "must be at least 1");
    if (sim.n < 2) fail(at(path, "n"), "must be at least 2");
  }
  if (sim.mode == SimulationMode::kMarketSession && !sim.sampler) {
    fail(at(path, "sampler"), "missing (required for market sessions)");
  }
  return sim;
}

json simulation_to_json(const SimulationSpec& sim) {
  json out = json::object();
  out["mode"] = mode_name(sim.mode);
  if (sim.sampler) out["sampler"] = sampler_to_json(*sim.sampler);
  out["n"] = sim.n;
  out["fractions"] = sim.fractions;
  out["trials"] = sim.trials;
  out["seed"] = sim.seed;
  if (sim.truth) out["truth"] = forecast_to_json(*sim.truth);
  out["coalition_truthful"] = sim.coalition_truthful;
  return out;
}

}  // namespace

ScoringRule rule_from_json(const json& doc, const std::string& path) {
  if (!doc.is_object()) fail(path, "expected an object");
  const std::string name =
      as_string(require(doc, "kind", path), at(path, "kind"));
  const auto kind = parse_rule_kind(name);
  if (!kind) fail(at(path, "kind"), "unknown scoring rule '" + name + "'");
  std::vector<double> a;
  if (const json* v = optional_field(doc, "a")) a = as_numbers(*v, at(path, "a"));
  double b = 1.0;
  if (const json* v = optional_field(doc, "b")) b = as_number(*v, at(path, "b"));
  double l = 0.0;
  if (const json* v = optional_field(doc, "l")) {
    l = as_number(*v, at(path, "l"));
    if (*kind != RuleKind::kGeneralizedLogarithmic && l != 0.0) {
      fail(at(path, "l"), "only the generalized logarithmic rule takes a floor");
    }
  }
  try {
    switch (*kind) {
      case RuleKind::kQuadratic: return ScoringRule::quadratic(b, a);
      case RuleKind::kLogarithmic: return ScoringRule::logarithmic(b, a);
      case RuleKind::kGeneralizedLogarithmic:
        return ScoringRule::generalized_logarithmic(l, b, a);
      case RuleKind::kSpherical: return ScoringRule::spherical(b, a);
      case RuleKind::kLinear: return ScoringRule::linear(b, a);
      case RuleKind::kCustomBinary: {
        const json& gen = require(doc, "generator", path);
        std::string gen_name;
        double parameter = 0.0;
        if (gen.is_string()) {
          gen_name = gen.get<std::string>();
        } else {
          gen_name = as_string(require(gen, "name", at(path, "generator")),
                               at(at(path, "generator"), "name"));
          if (const json* p = optional_field(gen, "parameter")) {
            parameter = as_number(*p, at(at(path, "generator"), "parameter"));
          }
        }
        return ScoringRule::custom_binary(make_generator(gen_name, parameter),
                                          b, a);
      }
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kScenarioInvalid) throw;
    fail(path, e.what());
  }
  fail(path, "unsupported rule");
}

json rule_to_json(const ScoringRule& rule) {
  json out = json::object();
  out["kind"] = rule_kind_name(rule.kind());
  out["b"] = rule.scale();
  if (!rule.offsets().empty()) out["a"] = rule.offsets();
  if (rule.kind() == RuleKind::kGeneralizedLogarithmic) out["l"] = rule.floor();
  if (const ConvexGenerator* gen = rule.generator()) {
    out["generator"] = {{"name", gen->name}, {"parameter", gen->parameter}};
  }
  return out;
}

Scenario parse_scenario(const json& doc) {
  if (!doc.is_object()) fail("<root>", "expected a JSON object");
  Scenario s;
  const json& version = require(doc, "schema_version", "");
  if (!version.is_number_integer() ||
      version.get<int>() != kScenarioSchemaVersion) {
    fail("schema_version", "expected " + std::to_string(kScenarioSchemaVersion));
  }
  s.schema_version = version.get<int>();

  const json& event = require(doc, "event", "");
  s.m = as_count(require(event, "m", "event"), "event.m");
  if (s.m < 2) fail("event.m", "an event needs at least 2 states");
  if (const json* labels = optional_field(event, "labels")) {
    if (!labels->is_array() || labels->size() != s.m) {
      fail("event.labels", "expected " + std::to_string(s.m) + " labels");
    }
    for (std::size_t j = 0; j < s.m; ++j) {
      s.labels.push_back(as_string((*labels)[j], at("event.labels", j + 1)));
    }
  }

  ScoringRule rule = rule_from_json(require(doc, "rule", ""), "rule");
  if (!rule.offsets().empty() && rule.offsets().size() != s.m) {
    fail("rule.a", "expected " + std::to_string(s.m) + " offsets");
  }
  if (rule.kind() == RuleKind::kCustomBinary && s.m != 2) {
    fail("rule.kind", "custom binary rules need a 2-state event");
  }

  if (const json* players = optional_field(doc, "players")) {
    if (!players->is_array()) fail("players", "expected an array");
    for (std::size_t i = 0; i < players->size(); ++i) {
      const std::string path = at("players", i + 1);
      const json& p = (*players)[i];
      Forecast belief = as_forecast(require(p, "belief", path),
                                    at(path, "belief"), s.m);
      double wager = 1.0;
      if (const json* w = optional_field(p, "wager")) {
        wager = as_number(*w, at(path, "wager"));
        if (!(wager > 0.0)) fail(at(path, "wager"), "must be positive");
      }
      std::optional<Forecast> report;
      if (const json* r = optional_field(p, "report")) {
        report = as_forecast(*r, at(path, "report"), s.m);
      }
      s.players.emplace_back(std::move(belief), wager, std::move(report));
    }
  }

  if (const json* sim = optional_field(doc, "simulation")) {
    s.simulation = simulation_from_json(*sim, "simulation", s.m);
  }
  // Simulated populations have no listed players; indices then refer to
  // the n sampled ones.
  const std::size_t population =
      !s.players.empty() || !s.simulation ? s.players.size() : s.simulation->n;

  if (const json* mech = optional_field(doc, "mechanism")) {
    s.mechanism = mechanism_from_json(*mech, "mechanism", rule, s.m,
                                      population);
  } else {
    s.mechanism.rule = rule;
  }
  if (s.mechanism.preset == MechanismPreset::kKilgourGerchak) {
    for (std::size_t i = 0; i < s.players.size(); ++i) {
      if (s.players[i].wager() != s.players.front().wager()) {
        fail(at(at("players", i + 1), "wager"),
             "the kilgour_gerchak preset needs equal wagers");
      }
    }
  }
  if (s.mechanism.preset == MechanismPreset::kLambert) {
    try {
      (void)normalize_to_unit_interval(rule, s.m);
    } catch (const Error& e) {
      fail("mechanism", std::string("lambert needs a bounded rule: ") + e.what());
    }
  }

  if (const json* c = optional_field(doc, "coalition")) {
    if (!c->is_object()) fail("coalition", "expected an object");
    auto members = as_indices(require(*c, "members", "coalition"),
                              "coalition.members", population);
    if (members.empty()) fail("coalition.members", "must not be empty");
    try {
      s.coalition = Coalition(std::move(members));
    } catch (const Error& e) {
      fail("coalition.members", e.what());
    }
    if (const json* r = optional_field(*c, "report")) {
      s.coalition_report = as_forecast(*r, "coalition.report", s.m);
    }
  }

  return s;
}

Scenario parse_scenario_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kScenarioInvalid,
                std::string("<root>: not valid JSON: ") + e.what());
  }
  return parse_scenario(doc);
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open scenario '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

json scenario_to_json(const Scenario& s) {
  json out = json::object();
  out["schema_version"] = s.schema_version;
  out["event"] = {{"m", s.m}};
  if (!s.labels.empty()) out["event"]["labels"] = s.labels;
  out["rule"] = rule_to_json(s.rule());
  out["mechanism"] = mechanism_to_json(s.mechanism);
  out["players"] = json::array();
  for (const Player& p : s.players) {
    json pj = {{"belief", forecast_to_json(p.belief())}, {"wager", p.wager()}};
    if (p.report()) pj["report"] = forecast_to_json(*p.report());
    out["players"].push_back(std::move(pj));
  }
  if (s.coalition) {
    out["coalition"] = {{"members", indices_to_json(s.coalition->members())}};
    if (s.coalition_report) {
      out["coalition"]["report"] = forecast_to_json(*s.coalition_report);
    }
  }
  if (s.simulation) out["simulation"] = simulation_to_json(*s.simulation);
  return out;
}

std::string canonical_json(const Scenario& scenario) {
  return scenario_to_json(scenario).dump();
}

std::string scenario_digest(const Scenario& scenario) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical_json(scenario)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace coalition_forge
