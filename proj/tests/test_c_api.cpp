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

#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

namespace {

std::string scenario_path(const char* name) {
  return std::string(COALITION_FORGE_SCENARIO_DIR) + "/" + name;
}

TEST(CApiTest, RuleLifecycleAndScore) {
  cf_rule* rule = nullptr;
  ASSERT_EQ(cf_rule_create(CF_RULE_QUADRATIC, 1.0, 0.0, nullptr, 2, &rule), CF_OK);
  const double r[] = {0.5, 0.5};
  double s = 0.0;
  ASSERT_EQ(cf_score(rule, r, 2, 0, &s), CF_OK);
  EXPECT_DOUBLE_EQ(s, 0.5);
  EXPECT_DOUBLE_EQ((cf_expected_score(rule, r, r, 2, &s), s), 0.5);

  cf_rule* unit = nullptr;
  ASSERT_EQ(cf_rule_normalize(rule, 2, &unit), CF_OK);
  const double v[] = {1.0, 0.0};
  ASSERT_EQ(cf_score(unit, v, 2, 1, &s), CF_OK);
  EXPECT_DOUBLE_EQ(s, 0.0);
  cf_rule_free(unit);
  cf_rule_free(rule);
  cf_rule_free(nullptr);
}

TEST(CApiTest, ErrorsCarryMessages) {
  cf_rule* rule = nullptr;
  EXPECT_EQ(cf_rule_create(CF_RULE_QUADRATIC, -1.0, 0.0, nullptr, 2, &rule), CF_INVALID);
  EXPECT_EQ(rule, nullptr);
  EXPECT_STREQ(cf_last_error_name(), "InvalidRule");

  ASSERT_EQ(cf_rule_create(CF_RULE_LOGARITHMIC, 1.0, 0.0, nullptr, 2, &rule), CF_OK);
  const double zero[] = {0.0, 1.0};
  double s = 0.0;
  EXPECT_EQ(cf_score(rule, zero, 2, 0, &s), CF_NUMERIC);
  EXPECT_STREQ(cf_last_error_name(), "LogOfZero");
  const double bad[] = {0.5, 0.6};
  EXPECT_EQ(cf_score(rule, bad, 2, 0, &s), CF_INVALID);
  EXPECT_NE(std::string(cf_last_error()).find("1.1"), std::string::npos);
  EXPECT_EQ(cf_score(rule, zero, 2, 5, &s), CF_INVALID);
  EXPECT_EQ(cf_score(nullptr, zero, 2, 0, &s), CF_INVALID);
  cf_rule_free(rule);
  EXPECT_EQ(cf_rule_normalize(nullptr, 2, &rule), CF_INVALID);
}

TEST(CApiTest, ArbitrageSphericalSplit) {
  cf_rule* rule = nullptr;
  ASSERT_EQ(cf_rule_create(CF_RULE_SPHERICAL, 1.0, 0.0, nullptr, 2, &rule), CF_OK);
  const double beliefs[] = {0.1, 0.9, 0.4, 0.6};
  const std::size_t members[] = {0, 1};
  double q[2], surplus[2], closed = 0.0;
  ASSERT_EQ(cf_arbitrage(rule, beliefs, nullptr, 2, 2, members, 2, q, surplus), CF_OK);
  EXPECT_NEAR(q[0], 0.275, 5e-4);
  ASSERT_EQ(cf_closed_form_surplus(rule, beliefs, nullptr, 2, 2, members, 2, &closed),
            CF_OK);
  EXPECT_NEAR(surplus[0], closed, 1e-12);
  EXPECT_NEAR(surplus[1], closed, 1e-12);

  const double same[] = {0.3, 0.7, 0.3, 0.7};
  EXPECT_EQ(cf_arbitrage(rule, same, nullptr, 2, 2, members, 2, q, nullptr),
            CF_NO_ARBITRAGE);
  const std::size_t out_of_range[] = {0, 2};
  EXPECT_EQ(cf_arbitrage(rule, beliefs, nullptr, 2, 2, out_of_range, 2, q, nullptr),
            CF_INVALID);
  cf_rule_free(rule);

  ASSERT_EQ(cf_rule_create(CF_RULE_LINEAR, 1.0, 0.0, nullptr, 2, &rule), CF_OK);
  EXPECT_EQ(cf_arbitrage(rule, beliefs, nullptr, 2, 2, members, 2, q, nullptr),
            CF_UNSUPPORTED);
  cf_rule_free(rule);
}

TEST(CApiTest, CustomBinaryAndCompetitivePayments) {
  cf_rule* rule = nullptr;
  ASSERT_EQ(cf_rule_create_custom_binary("logarithmic", 0.0, 1.0, nullptr, &rule), CF_OK);
  const double beliefs[] = {0.5, 0.5, 0.8, 0.2};
  const std::size_t members[] = {0, 1};
  double q[2];
  ASSERT_EQ(cf_arbitrage(rule, beliefs, nullptr, 2, 2, members, 2, q, nullptr), CF_OK);
  EXPECT_NEAR(q[0], 2.0 / 3.0, 1e-9);
  cf_rule_free(rule);
  EXPECT_EQ(cf_rule_create_custom_binary("nope", 0.0, 1.0, nullptr, &rule), CF_INVALID);

  ASSERT_EQ(cf_rule_create(CF_RULE_QUADRATIC, 1.0, 0.0, nullptr, 2, &rule), CF_OK);
  const double reports[] = {0.5, 0.5, 1.0, 0.0};
  const double wagers[] = {1.0, 1.0};
  double pay[2];
  ASSERT_EQ(cf_competitive_payments(rule, reports, wagers, 2, 2, 0, pay), CF_OK);
  EXPECT_NEAR(pay[0], -0.25, 1e-15);
  EXPECT_NEAR(pay[1], 0.25, 1e-15);
  cf_rule_free(rule);
}

TEST(CApiTest, ScenarioAndCommands) {
  cf_scenario* s = nullptr;
  ASSERT_EQ(cf_scenario_load(scenario_path("rain_quadratic.json").c_str(), &s), CF_OK);
  char* digest = nullptr;
  ASSERT_EQ(cf_scenario_digest(s, &digest), CF_OK);
  EXPECT_EQ(std::string(digest).rfind("fnv1a64:", 0), 0u);
  char* canon = nullptr;
  ASSERT_EQ(cf_scenario_canonical_json(s, &canon), CF_OK);
  cf_scenario* again = nullptr;
  ASSERT_EQ(cf_scenario_parse(canon, &again), CF_OK);
  char* digest2 = nullptr;
  ASSERT_EQ(cf_scenario_digest(again, &digest2), CF_OK);
  EXPECT_STREQ(digest, digest2);
  cf_string_free(digest);
  cf_string_free(digest2);
  cf_string_free(canon);
  cf_scenario_free(again);

  cf_command_options opts;
  cf_command_options_init(&opts);
  opts.format = CF_FORMAT_CSV;
  opts.outcome = 1;
  char* out = nullptr;
  char* err = nullptr;
  EXPECT_EQ(cf_run_command("score", s, &opts, &out, &err), CF_OK);
  EXPECT_EQ(std::string(out).rfind("player,E1", 0), 0u);
  EXPECT_STREQ(err, "");
  cf_string_free(out);
  cf_string_free(err);
  EXPECT_EQ(cf_run_command("simulate", s, &opts, nullptr, nullptr), CF_INVALID);
  cf_scenario_free(s);

  EXPECT_EQ(cf_scenario_load("/nonexistent/file.json", &s), CF_IO);
  EXPECT_EQ(cf_scenario_parse("{}", &s), CF_INVALID);
  EXPECT_NE(std::string(cf_last_error()).find("schema_version"), std::string::npos);
}

}  // namespace
