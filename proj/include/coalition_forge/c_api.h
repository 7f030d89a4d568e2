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

/* C interface to the coalition_forge library. Objects are opaque handles
 * owned by the caller and released with the matching *_free function.
 * Every fallible call returns a cf_status; on failure the message of the
 * last error on the calling thread is available from cf_last_error(). */

#ifndef COALITION_FORGE_C_API_H_
#define COALITION_FORGE_C_API_H_

#include <stddef.h>
#include <stdint.h>

#if defined(COALITION_FORGE_BUILDING)
#define CF_API __attribute__((visibility("default")))
#else
#define CF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cf_status {
  CF_OK = 0,
  CF_CHECK_FAILED = 1,   /* a verification check did not pass */
  CF_INVALID = 2,        /* invalid input or scenario */
  CF_NO_ARBITRAGE = 3,   /* the coalition members agree */
  CF_UNSUPPORTED = 4,    /* no construction for this rule or mechanism */
  CF_NUMERIC = 5,        /* domain, convergence or log-of-zero failure */
  CF_IO = 6,
  CF_INTERNAL = 7
} cf_status;

typedef struct cf_scenario cf_scenario;
typedef struct cf_rule cf_rule;

typedef enum cf_rule_kind {
  CF_RULE_QUADRATIC = 0,
  CF_RULE_LOGARITHMIC = 1,
  CF_RULE_GENERALIZED_LOGARITHMIC = 2,
  CF_RULE_SPHERICAL = 3,
  CF_RULE_CUSTOM_BINARY = 4,
  CF_RULE_LINEAR = 5
} cf_rule_kind;

typedef enum cf_format {
  CF_FORMAT_TABLE = 0,
  CF_FORMAT_CSV = 1,
  CF_FORMAT_JSON = 2
} cf_format;

CF_API const char* cf_version(void);

/* Message and error-code name of the last failure on this thread. */
CF_API const char* cf_last_error(void);
CF_API const char* cf_last_error_name(void);

/* Strings returned through char** out-parameters. */
CF_API void cf_string_free(char* s);

/* ---- scenarios ---- */

CF_API cf_status cf_scenario_load(const char* path, cf_scenario** out);
CF_API cf_status cf_scenario_parse(const char* json_text, cf_scenario** out);
CF_API void cf_scenario_free(cf_scenario* scenario);
CF_API cf_status cf_scenario_canonical_json(const cf_scenario* scenario,
                                            char** out);
CF_API cf_status cf_scenario_digest(const cf_scenario* scenario, char** out);

typedef struct cf_command_options {
  size_t outcome;      /* 1-based; 0 selects every outcome */
  cf_format format;
  size_t resolution;   /* properness lattice resolution */
  int has_seed;
  uint64_t seed;
  const char* out_path;  /* may be NULL */
} cf_command_options;

CF_API void cf_command_options_init(cf_command_options* opts);

/* Runs score | arbitrage | verify | simulate. The return value is the
 * command's exit status (0..3); stdout_text and stderr_text receive
 * newly allocated strings (either may be NULL to discard). */
CF_API cf_status cf_run_command(const char* command,
                                const cf_scenario* scenario,
                                const cf_command_options* opts,
                                char** stdout_text, char** stderr_text);

/* ---- rules ---- */

/* offsets may be NULL (all zero) or point to m values. */
CF_API cf_status cf_rule_create(cf_rule_kind kind, double b, double l,
                                const double* offsets, size_t m,
                                cf_rule** out);
CF_API cf_status cf_rule_create_custom_binary(const char* generator,
                                              double parameter, double b,
                                              const double* offsets,
                                              cf_rule** out);
CF_API cf_status cf_rule_normalize(const cf_rule* rule, size_t m,
                                   cf_rule** out);
CF_API void cf_rule_free(cf_rule* rule);

CF_API cf_status cf_score(const cf_rule* rule, const double* report, size_t m,
                          size_t outcome, double* out);
CF_API cf_status cf_expected_score(const cf_rule* rule, const double* report,
                                   const double* belief, size_t m,
                                   double* out);

/* Beliefs are n rows of m probabilities; members are 0-based indices.
 * q_out receives m values and surplus_out m values (either may be NULL). */
CF_API cf_status cf_arbitrage(const cf_rule* rule, const double* beliefs,
                              const double* wagers, size_t n, size_t m,
                              const size_t* members, size_t c, double* q_out,
                              double* surplus_out);
CF_API cf_status cf_closed_form_surplus(const cf_rule* rule,
                                        const double* beliefs,
                                        const double* wagers, size_t n,
                                        size_t m, const size_t* members,
                                        size_t c, double* out);

/* Self-financed competitive payments for outcome (0-based); n values. */
CF_API cf_status cf_competitive_payments(const cf_rule* rule,
                                         const double* reports,
                                         const double* wagers, size_t n,
                                         size_t m, size_t outcome,
                                         double* payments_out);

#ifdef __cplusplus
}
#endif

#endif /* COALITION_FORGE_C_API_H_ */
