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

#include "coalition_forge/commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "coalition_forge/error.hpp"

#ifndef COALITION_FORGE_VERSION
#define COALITION_FORGE_VERSION "0.0.0"
#endif

namespace coalition_forge {

using nlohmann::json;

namespace {

using Row = std::vector<std::string>;

std::string render_table(const Row& header, const std::vector<Row>& rows) {
  std::vector<std::size_t> width(header.size(), 0);
  auto widen = [&](const Row& r) {
    for (std::size_t k = 0; k < r.size() && k < width.size(); ++k) {
      width[k] = std::max(width[k], r[k].size());
    }
  };
  widen(header);
  for (const Row& r : rows) widen(r);
  std::ostringstream out;
  auto emit = [&](const Row& r) {
    for (std::size_t k = 0; k < r.size(); ++k) {
      out << r[k];
      if (k + 1 < r.size()) out << std::string(width[k] - r[k].size() + 2, ' ');
    }
    out << '\n';
  };
  emit(header);
  for (const Row& r : rows) emit(r);
  return out.str();
}

std::string render_csv(const Row& header, const std::vector<Row>& rows) {
  std::ostringstream out;
  auto emit = [&](const Row& r) {
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (k) out << ',';
      out << r[k];
    }
    out << '\n';
  };
  emit(header);
  for (const Row& r : rows) emit(r);
  return out.str();
}

std::string join(const Forecast& f) {
  std::string out;
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (j) out += ", ";
    out += format_double(f[j]);
  }
  return out;
}

std::string outcome_label(const Scenario&, std::size_t j) {
  return "E" + std::to_string(j + 1);
}

std::string timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  // Reproducible builds convention: pin the clock when requested.
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json envelope(const Scenario& s, std::string_view command, json payload) {
  return json{{"digest", scenario_digest(s)},
              {"tool_version", COALITION_FORGE_VERSION},
              {"command", std::string(command)},
              {"payload", std::move(payload)},
              {"timestamp", timestamp()}};
}

json to_json(const Forecast& f) {
  return json(std::vector<double>(f.begin(), f.end()));
}

const char* status_name(DominanceStatus status) {
  switch (status) {
    case DominanceStatus::kDominates: return "dominates";
    case DominanceStatus::kTies: return "ties";
    case DominanceStatus::kFails: return "fails";
  }
  return "fails";
}

std::string rule_summary(const ScoringRule& rule) {
  std::string out = rule_kind_name(rule.kind()) + " (b=" +
                    format_double(rule.scale());
  if (rule.kind() == RuleKind::kGeneralizedLogarithmic) {
    out += ", l=" + format_double(rule.floor());
  }
  if (const ConvexGenerator* gen = rule.generator()) {
    out += ", G=" + gen->name;
  }
  return out + ")";
}

const Coalition& require_coalition(const Scenario& s) {
  if (!s.coalition) {
    throw Error(ErrorCode::kScenarioInvalid, "coalition: missing");
  }
  s.coalition->check(s.players.size(), 2);
  return *s.coalition;
}

bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

std::string members_text(const Coalition& c) {
  std::string out;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k) out += ", ";
    out += std::to_string(c.members()[k] + 1);
  }
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorCode::kIoError, "failed writing '" + path + "'");
}

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) return "0";  // also folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::optional<OutputFormat> parse_output_format(std::string_view name) {
  if (name == "table") return OutputFormat::kTable;
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "json") return OutputFormat::kJson;
  return std::nullopt;
}

// --- score -------------------------------------------------------------------

CommandOutput run_score(const Scenario& s, const CommandOptions& opts) {
  if (s.players.empty()) {
    throw Error(ErrorCode::kScenarioInvalid, "players: none given");
  }
  std::vector<std::size_t> outcomes;
  if (opts.outcome) {
    const OutcomeIndex e = OutcomeIndex::from_one_based(*opts.outcome);
    e.check(s.m);
    outcomes.push_back(e.value());
  } else {
    for (std::size_t j = 0; j < s.m; ++j) outcomes.push_back(j);
  }
  const PaymentTable table = payment_table(s.mechanism, s.players);

  CommandOutput out;
  if (opts.format == OutputFormat::kJson) {
    json payments = json::array();
    for (std::size_t i = 0; i < table.players(); ++i) {
      json row = json::array();
      for (std::size_t j : outcomes) row.push_back(table(i, j));
      payments.push_back(std::move(row));
    }
    json cols = json::array();
    for (std::size_t j : outcomes) cols.push_back(j + 1);
    json payload = {{"mechanism", mechanism_name(s.mechanism)},
                    {"rule", rule_to_json(s.rule())},
                    {"outcomes", cols},
                    {"payments", payments}};
    out.text = envelope(s, "score", std::move(payload)).dump(2) + "\n";
    return out;
  }
  Row header{"player"};
  for (std::size_t j : outcomes) header.push_back(outcome_label(s, j));
  std::vector<Row> rows;
  for (std::size_t i = 0; i < table.players(); ++i) {
    Row r{std::to_string(i + 1)};
    for (std::size_t j : outcomes) r.push_back(format_double(table(i, j)));
    rows.push_back(std::move(r));
  }
  out.text = opts.format == OutputFormat::kCsv ? render_csv(header, rows)
                                               : render_table(header, rows);
  return out;
}

// --- arbitrage ---------------------------------------------------------------

CommandOutput run_arbitrage(const Scenario& s, const CommandOptions& opts) {
  const Coalition& coalition = require_coalition(s);
  const ScoringRule rule = s.mechanism.effective_rule(s.m);
  const ArbitrageResult ar = arbitrage_report(rule, s.players, coalition);
  const Forecast q = s.coalition_report ? *s.coalition_report : ar.q;
  const std::vector<double> surplus =
      s.coalition_report ? surplus_by_outcome(rule, s.players, coalition, q)
                         : ar.surplus_by_outcome;
  std::optional<double> closed;
  try {
    closed = closed_form_surplus(rule, s.players, coalition);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kUnsupportedRule) throw;
  }
  const DominanceVerdict verdict =
      verify_dominance_oracle(rule, s.players, coalition, q);
  const std::vector<Forecast> coordinated(coalition.size(), q);
  const std::vector<double> mech_surplus =
      coalition_surplus(s.mechanism, s.players, coalition, coordinated);
  bool ordering_violation = false;
  if (s.mechanism.kind == MechanismKind::kMarketScoring) {
    ordering_violation = ordering_violates(
        s.mechanism.ordering_or_natural(s.players.size()), coalition);
  }

  CommandOutput out;
  out.exit_code = ar.agreement ? kExitNoArbitrage : kExitOk;
  if (opts.format == OutputFormat::kJson) {
    json payload = {
        {"rule", rule_to_json(rule)},
        {"mechanism", mechanism_name(s.mechanism)},
        {"coalition", json::array()},
        {"q", to_json(q)},
        {"q_overridden", s.coalition_report.has_value()},
        {"surplus_by_outcome", surplus},
        {"mechanism_surplus_by_outcome", mech_surplus},
        {"closed_form_surplus", closed ? json(*closed) : json(nullptr)},
        {"equalized", ar.equalized},
        {"agreement", ar.agreement},
        {"verdict",
         {{"status", status_name(verdict.status)},
          {"witness_outcome", verdict.witness
                                  ? json(verdict.witness->one_based())
                                  : json(nullptr)},
          {"min_surplus", verdict.min_surplus}}},
        {"ordering_violation", ordering_violation}};
    for (std::size_t i : coalition.members()) {
      payload["coalition"].push_back(i + 1);
    }
    out.text = envelope(s, "arbitrage", std::move(payload)).dump(2) + "\n";
    return out;
  }
  Row header{"outcome", "q", "surplus", "mechanism_surplus"};
  std::vector<Row> rows;
  for (std::size_t j = 0; j < s.m; ++j) {
    rows.push_back({outcome_label(s, j), format_double(q[j]),
                    format_double(surplus[j]), format_double(mech_surplus[j])});
  }
  if (opts.format == OutputFormat::kCsv) {
    out.text = render_csv(header, rows);
    return out;
  }
  std::ostringstream text;
  text << "rule:       " << rule_summary(rule) << '\n'
       << "mechanism:  " << mechanism_name(s.mechanism) << '\n'
       << "coalition:  " << members_text(coalition)
       << " (w_C = " << format_double(coalition.total_wager(s.players))
       << ")\n"
       << "q:          " << join(q)
       << (s.coalition_report ? "  (override)" : "") << '\n';
  if (closed) text << "closed-form surplus: " << format_double(*closed) << '\n';
  text << "verdict:    " << status_name(verdict.status);
  if (verdict.witness) {
    text << " (witness " << outcome_label(s, verdict.witness->value()) << ")";
  }
  text << '\n';
  if (ar.agreement) text << "members agree: no arbitrage\n";
  if (ordering_violation) {
    text << "warning: a coalition member reports directly after another; "
            "the dominance guarantee does not apply\n";
  }
  text << '\n' << render_table(header, rows);
  out.text = text.str();
  return out;
}

// --- verify ------------------------------------------------------------------

namespace {

struct Check {
  std::string name;
  std::string status;  // pass | fail | warn
  std::string detail;
};

void verify_arbitrage(const Scenario& s, std::vector<Check>& checks) {
  const Coalition& coalition = *s.coalition;
  const ScoringRule rule = s.mechanism.effective_rule(s.m);
  ArbitrageResult ar{Forecast::uniform(s.m), {}, false, false};
  try {
    ar = arbitrage_report(rule, s.players, coalition);
  } catch (const Error& e) {
    checks.push_back({"arbitrage_construction", "fail",
                      std::string(error_code_name(e.code())) + ": " + e.what()});
    return;
  }
  if (ar.agreement) {
    checks.push_back({"dominance", "pass", "members agree; surplus ties at 0"});
    return;
  }
  const Forecast q = s.coalition_report ? *s.coalition_report : ar.q;
  const DominanceVerdict verdict =
      verify_dominance_oracle(rule, s.players, coalition, q);
  std::string detail = "q = (" + join(q) + "), min surplus " +
                       format_double(verdict.min_surplus);
  if (verdict.witness) {
    detail += ", witness E" + std::to_string(verdict.witness->one_based());
  }
  checks.push_back({"dominance",
                    verdict.status == DominanceStatus::kDominates ? "pass" : "fail",
                    status_name(verdict.status) + std::string(": ") + detail});

  if (!s.coalition_report) {
    try {
      const double closed = closed_form_surplus(rule, s.players, coalition);
      bool ok = true;
      for (double v : ar.surplus_by_outcome) ok = ok && close_rel(v, closed, 1e-9);
      checks.push_back({"closed_form_surplus", ok ? "pass" : "fail",
                        "closed form " + format_double(closed)});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kUnsupportedRule) throw;
    }
  }

  const std::vector<Forecast> coordinated(coalition.size(), q);
  const std::vector<double> traditional =
      surplus_by_outcome(rule, s.players, coalition, q);
  if (s.mechanism.kind == MechanismKind::kSelfFinancedCompetitive) {
    const double w_c = coalition.total_wager(s.players);
    double w_n = 0.0;
    for (const Player& p : s.players) w_n += p.wager();
    const auto direct =
        coalition_surplus(s.mechanism, s.players, coalition, coordinated);
    bool ok = true;
    for (std::size_t j = 0; j < s.m; ++j) {
      ok = ok && close_rel(direct[j], (1.0 - w_c / w_n) * traditional[j], 1e-9);
    }
    checks.push_back({"competitive_surplus_identity", ok ? "pass" : "fail",
                      "factor 1 - w_C/w_N = " + format_double(1.0 - w_c / w_n)});
    if (coalition.size() == s.players.size()) {
      checks.push_back({"competitive_coalition_scope", "warn",
                        "coalition holds every wager; surplus is identically 0"});
    }
  }
  if (s.mechanism.kind == MechanismKind::kMarketScoring) {
    const auto ordering = s.mechanism.ordering_or_natural(s.players.size());
    const auto direct =
        coalition_surplus(s.mechanism, s.players, coalition, coordinated);
    if (ordering_violates(ordering, coalition)) {
      checks.push_back({"market_ordering", "warn",
                        "a coalition member reports directly after another"});
    } else {
      bool ok = true;
      for (std::size_t j = 0; j < s.m; ++j) {
        ok = ok && close_rel(direct[j], traditional[j], 1e-9);
      }
      checks.push_back({"market_surplus_identity", ok ? "pass" : "fail",
                        "market surplus equals traditional surplus"});
    }
  }
}

}  // namespace

CommandOutput run_verify(const Scenario& s, const CommandOptions& opts) {
  std::vector<Check> checks;
  const ScoringRule rule = s.mechanism.effective_rule(s.m);

  std::vector<Forecast> beliefs;
  for (const Player& p : s.players) {
    if (std::find(beliefs.begin(), beliefs.end(), p.belief()) == beliefs.end()) {
      beliefs.push_back(p.belief());
    }
  }
  if (beliefs.empty()) beliefs.push_back(Forecast::uniform(s.m));
  for (std::size_t k = 0; k < beliefs.size(); ++k) {
    const PropernessReport rep =
        check_strict_properness(rule, beliefs[k], opts.resolution);
    std::string detail = "belief (" + join(beliefs[k]) + "), max margin " +
                         format_double(rep.max_margin);
    if (!rep.passed && rep.nearest_competitor) {
      detail += " at (" + join(*rep.nearest_competitor) + ")";
    }
    checks.push_back({"properness_" + std::to_string(k + 1),
                      rep.passed ? "pass" : "fail", detail});
  }

  if (s.mechanism.kind == MechanismKind::kSelfFinancedCompetitive &&
      s.players.size() >= 2) {
    std::vector<Player> reporting;
    for (const Player& p : s.players) {
      reporting.push_back(p.with_report(p.report_or_belief()));
    }
    const PaymentTable table = payment_table(s.mechanism, reporting);
    double worst = 0.0;
    for (std::size_t j = 0; j < s.m; ++j) {
      worst = std::max(worst, std::abs(table.column_sum(j)));
    }
    checks.push_back({"self_financing", worst <= 1e-9 ? "pass" : "fail",
                      "max |column sum| " + format_double(worst)});
    if (s.mechanism.preset == MechanismPreset::kLambert) {
      bool ok = true;
      for (std::size_t i = 0; i < table.players(); ++i) {
        for (std::size_t j = 0; j < s.m; ++j) {
          ok = ok && table(i, j) > -reporting[i].wager();
        }
      }
      checks.push_back({"lambert_floor", ok ? "pass" : "fail",
                        "every payment exceeds minus the wager"});
    }
  }

  if (s.coalition && s.coalition->size() >= 2) verify_arbitrage(s, checks);

  CommandOutput out;
  const bool failed = std::any_of(checks.begin(), checks.end(),
                                  [](const Check& c) { return c.status == "fail"; });
  out.exit_code = failed ? kExitCheckFailed : kExitOk;
  if (opts.format == OutputFormat::kJson) {
    json arr = json::array();
    for (const Check& c : checks) {
      arr.push_back({{"check", c.name}, {"status", c.status}, {"detail", c.detail}});
    }
    json payload = {{"checks", arr}, {"passed", !failed},
                    {"resolution", opts.resolution}};
    out.text = envelope(s, "verify", std::move(payload)).dump(2) + "\n";
    return out;
  }
  Row header{"check", "status", "detail"};
  std::vector<Row> rows;
  for (const Check& c : checks) {
    std::string detail = c.detail;
    if (opts.format == OutputFormat::kCsv) {
      std::replace(detail.begin(), detail.end(), ',', ';');
    }
    rows.push_back({c.name, c.status, detail});
  }
  out.text = opts.format == OutputFormat::kCsv ? render_csv(header, rows)
                                               : render_table(header, rows);
  return out;
}

// --- simulate ----------------------------------------------------------------

namespace {

json sweep_payload(const SweepResult& r, const SweepConfig& cfg) {
  json rows = json::array();
  for (const SweepRow& row : r.rows) {
    rows.push_back({{"fraction", row.fraction},
                    {"coalition_size", row.coalition_size},
                    {"mean", row.mean},
                    {"se", row.se},
                    {"trials", row.trials},
                    {"mean_per_member", row.mean_per_member}});
  }
  return {{"mode", "sweep"},
          {"mechanism", mechanism_name(cfg.mechanism)},
          {"n", cfg.n},
          {"seed", cfg.seed},
          {"rows", rows},
          {"argmax_fraction", r.argmax_fraction},
          {"linear_fit", {{"slope", r.linear_slope}, {"intercept", r.linear_intercept}}},
          {"quadratic_fit",
           {{"a2", r.quad_a2},
            {"a1", r.quad_a1},
            {"a0", r.quad_a0},
            {"vertex", r.quad_vertex ? json(*r.quad_vertex) : json(nullptr)}}}};
}

std::string sweep_csv(const SweepResult& r) {
  Row header{"fraction", "mean", "se", "trials", "mean_per_member"};
  std::vector<Row> rows;
  for (const SweepRow& row : r.rows) {
    rows.push_back({format_double(row.fraction), format_double(row.mean),
                    format_double(row.se), std::to_string(row.trials),
                    format_double(row.mean_per_member)});
  }
  return render_csv(header, rows);
}

// PATH.csv -> (PATH.csv, PATH.json); other PATH -> (PATH.csv, PATH.json).
std::pair<std::string, std::string> output_paths(const std::string& path) {
  const std::string ext = ".csv";
  if (path.size() > ext.size() &&
      path.compare(path.size() - ext.size(), ext.size(), ext) == 0) {
    const std::string stem = path.substr(0, path.size() - ext.size());
    return {path, stem + ".json"};
  }
  return {path + ".csv", path + ".json"};
}

CommandOutput emit(const Scenario& s, const CommandOptions& opts,
                   const std::string& csv, const std::string& table,
                   json payload, const std::string& summary) {
  CommandOutput out;
  const std::string env = envelope(s, "simulate", std::move(payload)).dump(2) + "\n";
  if (opts.out_path) {
    const auto [csv_path, json_path] = output_paths(*opts.out_path);
    write_file(csv_path, csv);
    write_file(json_path, env);
    out.text = summary + "wrote " + csv_path + " and " + json_path + "\n";
    return out;
  }
  switch (opts.format) {
    case OutputFormat::kCsv: out.text = csv; break;
    case OutputFormat::kJson: out.text = env; break;
    case OutputFormat::kTable: out.text = table + summary; break;
  }
  return out;
}

}  // namespace

CommandOutput run_simulate(const Scenario& s, const CommandOptions& opts) {
  if (!s.simulation) {
    throw Error(ErrorCode::kScenarioInvalid, "simulation: missing");
  }
  const SimulationSpec& sim = *s.simulation;
  const std::uint64_t seed = opts.seed.value_or(sim.seed);

  switch (sim.mode) {
    case SimulationMode::kSweep: {
      SweepConfig cfg{s.mechanism, *sim.sampler, sim.n, sim.fractions,
                      sim.trials, seed, sim.truth, 0};
      const SweepResult r = expected_surplus_sweep(cfg);
      std::vector<Row> rows;
      for (const SweepRow& row : r.rows) {
        rows.push_back({format_double(row.fraction),
                        std::to_string(row.coalition_size),
                        format_double(row.mean), format_double(row.se),
                        std::to_string(row.trials),
                        format_double(row.mean_per_member)});
      }
      const std::string table = render_table(
          {"fraction", "size", "mean", "se", "trials", "mean_per_member"}, rows);
      std::string summary = "argmax_fraction " + format_double(r.argmax_fraction);
      if (cfg.mechanism.kind == MechanismKind::kSelfFinancedCompetitive &&
          r.quad_vertex) {
        summary += ", fitted vertex " + format_double(*r.quad_vertex);
      } else {
        summary += ", fitted slope " + format_double(r.linear_slope);
      }
      summary += "\n";
      return emit(s, opts, sweep_csv(r), table, sweep_payload(r, cfg), summary);
    }
    case SimulationMode::kIntermediary: {
      const Coalition& coalition = require_coalition(s);
      const IntermediaryRun run =
          intermediary_run(s.mechanism, s.players, coalition, seed);
      std::vector<Row> rows;
      for (std::size_t j = 0; j < s.m; ++j) {
        rows.push_back({outcome_label(s, j),
                        format_double(run.profit_by_outcome[j])});
      }
      json payload = {{"mode", "intermediary"},
                      {"scenario_id", run.scenario_id},
                      {"mechanism", mechanism_name(s.mechanism)},
                      {"q", to_json(run.q)},
                      {"profit_by_outcome", run.profit_by_outcome},
                      {"min_profit", run.min_profit},
                      {"no_arbitrage", run.no_arbitrage}};
      const std::string summary =
          "min_profit " + format_double(run.min_profit) +
          (run.no_arbitrage ? " (clients agree: no arbitrage)" : "") + "\n";
      CommandOutput out = emit(s, opts, render_csv({"outcome", "profit"}, rows),
                               render_table({"outcome", "profit"}, rows),
                               std::move(payload), summary);
      if (run.no_arbitrage) out.exit_code = kExitNoArbitrage;
      return out;
    }
    case SimulationMode::kMarketSession: {
      if (!s.coalition) {
        throw Error(ErrorCode::kScenarioInvalid, "coalition: missing");
      }
      const Coalition& coalition = *s.coalition;
      if (s.mechanism.kind != MechanismKind::kMarketScoring) {
        throw Error(ErrorCode::kScenarioInvalid,
                    "mechanism: market sessions need the market mechanism");
      }
      const std::size_t n =
          s.mechanism.ordering ? s.mechanism.ordering->size() : sim.n;
      coalition.check(n, 2);
      const MechanismSpec& spec = s.mechanism;
      const auto ordering = spec.ordering_or_natural(n);
      const MarketSession session =
          market_session(spec, ordering, coalition, *sim.sampler, seed,
                         !sim.coalition_truthful);
      std::vector<Row> rows;
      for (std::size_t j = 0; j < s.m; ++j) {
        rows.push_back({outcome_label(s, j),
                        format_double(session.surplus_by_outcome[j])});
      }
      json payload = {{"mode", "market_session"},
                      {"surplus_by_outcome", session.surplus_by_outcome},
                      {"ordering_violation", session.ordering_violation}};
      const std::string summary =
          session.ordering_violation
              ? "warning: ordering places coalition members back to back\n"
              : std::string();
      return emit(s, opts, render_csv({"outcome", "surplus"}, rows),
                  render_table({"outcome", "surplus"}, rows), std::move(payload),
                  summary);
    }
  }
  throw Error(ErrorCode::kScenarioInvalid, "simulation.mode: unsupported");
}

CommandOutput run_command(std::string_view command, const Scenario& s,
                          const CommandOptions& opts) {
  try {
    if (command == "score") return run_score(s, opts);
    if (command == "arbitrage") return run_arbitrage(s, opts);
    if (command == "verify") return run_verify(s, opts);
    if (command == "simulate") return run_simulate(s, opts);
    return {kExitValidation, "", "unknown command '" + std::string(command) + "'"};
  } catch (const Error& e) {
    return {kExitValidation, "",
            std::string(error_code_name(e.code())) + ": " + e.what()};
  }
}

}  // namespace coalition_forge
