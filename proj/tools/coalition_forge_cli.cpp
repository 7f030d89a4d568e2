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

// coalition-forge: command-line front end over the C interface.
//
//   coalition-forge score     --scenario rain_quadratic.json --outcome 1 --format csv
//   coalition-forge arbitrage --scenario spherical_split.json
//   coalition-forge verify    --scenario spherical_split.json --resolution 100
//   coalition-forge simulate  --scenario sweep.json --seed 7 --out sweep
//
// Exit codes: 0 success, 1 check failure, 2 validation error,
// 3 no arbitrage (the coalition members agree).

#include <cstdint>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "coalition_forge/c_api.h"

namespace {

constexpr int kExitValidation = 2;

void print_and_free(char* text, std::FILE* stream) {
  if (text) {
    std::fputs(text, stream);
    cf_string_free(text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coalition arbitrage toolkit for wagering mechanisms",
               "coalition-forge"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cf_version()));

  std::string scenario_path;
  std::size_t outcome = 0;
  std::string format = "table";
  std::size_t resolution = 50;
  std::uint64_t seed = 0;
  std::string out_path;

  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"score", "Print the payment table of every player"},
      {"arbitrage", "Construct the coalition's identical report and surplus"},
      {"verify", "Run properness, dominance and mechanism identity checks"},
      {"simulate", "Run a sweep, intermediary run or market session"},
  };
  CLI::Option* seed_opt = nullptr;
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("--scenario", scenario_path, "Scenario JSON file")
        ->required();
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"table", "csv", "json"}));
    const std::string name = s.name;
    if (name == "score") {
      sub->add_option("--outcome", outcome, "Outcome index (1-based)")
          ->check(CLI::PositiveNumber);
    }
    if (name == "verify") {
      sub->add_option("--resolution", resolution,
                      "Simplex lattice resolution for properness checks")
          ->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
    }
    if (name == "simulate") {
      seed_opt = sub->add_option("--seed", seed, "Seed override");
      sub->add_option("--out", out_path,
                      "Write CSV to PATH and the JSON envelope beside it");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }

  const std::string command = app.get_subcommands().front()->get_name();

  cf_scenario* scenario = nullptr;
  if (cf_scenario_load(scenario_path.c_str(), &scenario) != CF_OK) {
    std::fprintf(stderr, "error: %s: %s\n", cf_last_error_name(),
                 cf_last_error());
    return kExitValidation;
  }

  cf_command_options opts;
  cf_command_options_init(&opts);
  opts.outcome = outcome;
  opts.format = format == "csv"    ? CF_FORMAT_CSV
                : format == "json" ? CF_FORMAT_JSON
                                   : CF_FORMAT_TABLE;
  opts.resolution = resolution;
  if (seed_opt && seed_opt->count() > 0) {
    opts.has_seed = 1;
    opts.seed = seed;
  }
  if (!out_path.empty()) opts.out_path = out_path.c_str();

  char* out_text = nullptr;
  char* err_text = nullptr;
  const cf_status st =
      cf_run_command(command.c_str(), scenario, &opts, &out_text, &err_text);
  cf_scenario_free(scenario);
  print_and_free(out_text, stdout);
  const bool reported = err_text && *err_text;
  if (reported) std::fprintf(stderr, "error: %s\n", err_text);
  cf_string_free(err_text);

  if (st >= CF_OK && st <= CF_NO_ARBITRAGE) {
    if (st == CF_INVALID && !reported) {
      std::fprintf(stderr, "error: %s\n", cf_last_error());
    }
    return static_cast<int>(st);
  }
  std::fprintf(stderr, "error: %s: %s\n", cf_last_error_name(),
               cf_last_error());
  return kExitValidation;
}
