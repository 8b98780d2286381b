// Copyright 2026 The bhplan Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the planner. Every call returns a bhp_status; on failure
 * bhp_last_error() describes the problem (thread-local, valid until the next
 * call on the same thread). Strings returned through char** are owned by the
 * caller and released with bhp_string_free(). Handles are released with
 * their matching *_free(); passing NULL to a free function is a no-op. */

#ifndef BHPLAN_BHPLAN_H_
#define BHPLAN_BHPLAN_H_

#include <stdint.h>

#if defined(_WIN32)
#define BHP_API __declspec(dllexport)
#else
#define BHP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bhp_status {
  BHP_OK = 0,
  BHP_ERR_INPUT = 1,     /* malformed or out-of-range input */
  BHP_ERR_LIMIT = 2,     /* instance beyond the oracle limits */
  BHP_ERR_INTEGRITY = 3, /* internal invariant broken */
  BHP_ERR_IO = 4,
  BHP_ERR_INTERNAL = 5
} bhp_status;

typedef struct bhp_scenario bhp_scenario;
typedef struct bhp_tables bhp_tables;
typedef struct bhp_solution bhp_solution;
typedef struct bhp_result bhp_result;

BHP_API const char* bhp_version(void);
BHP_API const char* bhp_last_error(void);
BHP_API void bhp_string_free(char* s);

/* Scenarios ---------------------------------------------------------------*/

/* preset: NULL or "paper-fig2". gen_json: NULL or an object of overrides. */
BHP_API bhp_status bhp_scenario_generate(const char* preset,
                                         const char* gen_json, uint64_t seed,
                                         bhp_scenario** out);
BHP_API bhp_status bhp_scenario_from_json(const char* json,
                                          bhp_scenario** out);
BHP_API bhp_status bhp_scenario_to_json(const bhp_scenario* sc, char** out);
BHP_API bhp_status bhp_scenario_hash(const bhp_scenario* sc, uint64_t* out);
/* restriction: "none", "fiber-only" or "single-hop". */
BHP_API bhp_status bhp_scenario_restrict(const bhp_scenario* sc,
                                         const char* restriction,
                                         bhp_scenario** out);
BHP_API bhp_status bhp_scenario_counts(const bhp_scenario* sc, int* bans,
                                       int* sbss, int* mas, int* machines,
                                       int* subareas);
BHP_API bhp_status bhp_scenario_theta(const bhp_scenario* sc, double* out);
BHP_API void bhp_scenario_free(bhp_scenario* sc);

/* Derived tables ----------------------------------------------------------*/

BHP_API bhp_status bhp_tables_derive(const bhp_scenario* sc,
                                     bhp_tables** out);
BHP_API bhp_status bhp_tables_to_json(const bhp_tables* t,
                                      const bhp_scenario* sc, char** out);
/* Fails with BHP_ERR_INPUT when the file was derived for another scenario. */
BHP_API bhp_status bhp_tables_from_json(const char* json,
                                        const bhp_scenario* sc,
                                        bhp_tables** out);
BHP_API void bhp_tables_free(bhp_tables* t);

/* Solutions ---------------------------------------------------------------*/

BHP_API bhp_status bhp_solution_from_json(const bhp_scenario* sc,
                                          const char* json,
                                          bhp_solution** out);
/* Writes the number of violated constraints and a JSON array of
 * {"id","detail"} objects. budget < 0 disables the cost cap. */
BHP_API bhp_status bhp_solution_check(const bhp_solution* sol,
                                      const bhp_scenario* sc,
                                      const bhp_tables* t, double budget,
                                      int* violations, char** report_json);
/* {"f1","f2","f3","fc"} under weight theta. */
BHP_API bhp_status bhp_solution_objectives(const bhp_solution* sol,
                                           const bhp_scenario* sc,
                                           double theta, char** out_json);
BHP_API void bhp_solution_free(bhp_solution* sol);

/* Solving -----------------------------------------------------------------*/

/* Fills defaults, applies the overrides object (may be NULL) and returns
 * the complete parameter set as JSON. theta defaults to the scenario's
 * weight when sc is not NULL. */
BHP_API bhp_status bhp_params_resolve(const bhp_scenario* sc,
                                      const char* overrides_json,
                                      char** out_json);
BHP_API bhp_status bhp_solve(const bhp_scenario* sc, const bhp_tables* t,
                             const char* params_json, bhp_result** out);
/* {"iterations","epsilon0","epsilons":[...],"front":[{f1,f2,f3,fc,epsilon}],
 *  "bounds":[{epsilon,bound,raw_bound,heuristic}],"gap":{...}} */
BHP_API bhp_status bhp_result_summary(const bhp_result* r, char** out_json);
/* Writes front.csv, bounds.csv, epsilons.csv and solutions/; returns the
 * written relative paths as a JSON array. */
BHP_API bhp_status bhp_result_write(const bhp_result* r,
                                    const bhp_scenario* sc, const char* dir,
                                    char** files_json);
/* Front entry `index` in f1 order, as a solution handle. */
BHP_API bhp_status bhp_result_solution(const bhp_result* r, int index,
                                       bhp_solution** out);
BHP_API void bhp_result_free(bhp_result* r);

/* Oracle ------------------------------------------------------------------*/

/* Exact nondominated (f1, f_c) points as [[f1, fc], ...] plus the CSV form.
 * Returns BHP_ERR_LIMIT for instances beyond the enumeration limits. */
BHP_API bhp_status bhp_oracle_front(const bhp_scenario* sc,
                                    const bhp_tables* t, double theta,
                                    char** points_json, char** csv);

/* Reports -----------------------------------------------------------------*/

/* Reads front.csv and bounds.csv from dir and returns the gap report:
 * {"rows":[{epsilon,best_fc,bound,ratio,heuristic}],"skipped":[...],
 *  "max_ratio","any_heuristic","front":[[f1,fc]],"bounds":[[eps,bound]]} */
BHP_API bhp_status bhp_report(const char* dir, char** out_json);

/* Utilities ---------------------------------------------------------------*/

BHP_API bhp_status bhp_hash_file(const char* path, char** hex_out);

#ifdef __cplusplus
}
#endif

#endif /* BHPLAN_BHPLAN_H_ */
