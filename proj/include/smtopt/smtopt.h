/* Copyright 2026 The smtopt Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of the smtopt MINLP engine.
 *
 * All handles are opaque. Functions returning smtopt_status report failures
 * through the code and a thread-local message from smtopt_last_error().
 * Strings returned through char** out-parameters are owned by the caller and
 * released with smtopt_string_free().
 */

#ifndef SMTOPT_SMTOPT_H_
#define SMTOPT_SMTOPT_H_

#include <stddef.h>

#if defined(_WIN32)
#define SMTOPT_API __declspec(dllexport)
#else
#define SMTOPT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct smtopt_model smtopt_model;
typedef struct smtopt_config smtopt_config;
typedef struct smtopt_result smtopt_result;

typedef enum smtopt_status {
  SMTOPT_OK = 0,
  SMTOPT_ERR_INVALID_ARGUMENT = 1,
  SMTOPT_ERR_IO = 2,
  SMTOPT_ERR_PARSE = 3,
  SMTOPT_ERR_INVALID_VECTOR = 4,
  SMTOPT_ERR_SOLVER = 5,
  SMTOPT_ERR_MISSING_LOGS = 6,
  SMTOPT_ERR_TOO_LARGE = 7,
  SMTOPT_ERR_INTERNAL = 8
} smtopt_status;

typedef enum smtopt_format {
  SMTOPT_FORMAT_AUTO = 0,
  SMTOPT_FORMAT_OSIL = 1,
  SMTOPT_FORMAT_MPS = 2
} smtopt_format;

typedef enum smtopt_outcome {
  SMTOPT_OPTIMAL = 0,
  SMTOPT_INFEASIBLE = 1,
  SMTOPT_UNKNOWN = 2,
  SMTOPT_BOUND_EXCEEDED = 3
} smtopt_outcome;

/* Message of the last failed call on this thread, "" if none. */
SMTOPT_API const char* smtopt_last_error(void);
SMTOPT_API const char* smtopt_version(void);
SMTOPT_API void smtopt_string_free(char* s);

/* Models. free_default_lower_bound applies to OSiL only. AUTO picks by
 * extension (.osil/.xml, .mps) and then by content. */
SMTOPT_API smtopt_status smtopt_model_load_file(const char* path, smtopt_format format,
                                                int free_default_lower_bound, smtopt_model** out);
SMTOPT_API smtopt_status smtopt_model_load_buffer(const char* data, size_t size, smtopt_format format,
                                                  int free_default_lower_bound, smtopt_model** out);
SMTOPT_API void smtopt_model_free(smtopt_model* model);
SMTOPT_API size_t smtopt_model_num_variables(const smtopt_model* model);
SMTOPT_API size_t smtopt_model_num_constraints(const smtopt_model* model);
/* Problem class name such as "MINLP"; static storage. */
SMTOPT_API const char* smtopt_model_class(const smtopt_model* model);

/* Configuration. Defaults: accuracy 1/1000, timeout 1800 s, all valid
 * vectors, one thread per vector. */
SMTOPT_API smtopt_config* smtopt_config_new(void);
SMTOPT_API void smtopt_config_free(smtopt_config* config);
/* Accuracy as a rational literal: "0.001", "1/1000", "1e-3". */
SMTOPT_API smtopt_status smtopt_config_set_accuracy(smtopt_config* config, const char* accuracy);
/* Seconds; <= 0 disables the deadline. */
SMTOPT_API smtopt_status smtopt_config_set_timeout(smtopt_config* config, double seconds);
SMTOPT_API smtopt_status smtopt_config_set_solver(smtopt_config* config, const char* command);
SMTOPT_API smtopt_status smtopt_config_add_solver_arg(smtopt_config* config, const char* arg);
/* Milliseconds per check-sat; <= 0 means none. */
SMTOPT_API smtopt_status smtopt_config_set_check_timeout(smtopt_config* config, long long ms);
/* 0 = one thread per vector. */
SMTOPT_API smtopt_status smtopt_config_set_jobs(smtopt_config* config, size_t jobs);
/* Comma separated selection, e.g. "bin_flattening,nobb-ubs". NULL = all. */
SMTOPT_API smtopt_status smtopt_config_set_vectors(smtopt_config* config, const char* spec);
SMTOPT_API smtopt_status smtopt_config_set_log_dir(smtopt_config* config, const char* dir);
SMTOPT_API smtopt_status smtopt_config_set_benchmark(smtopt_config* config, const char* name);
SMTOPT_API smtopt_status smtopt_config_set_sequential(smtopt_config* config, int on);
SMTOPT_API smtopt_status smtopt_config_set_cross_check(smtopt_config* config, int on);

/* Runs the portfolio. Solver-side trouble becomes an UNKNOWN result rather
 * than an error. */
SMTOPT_API smtopt_status smtopt_solve(const smtopt_model* model, const smtopt_config* config,
                                      smtopt_result** out);
SMTOPT_API void smtopt_result_free(smtopt_result* result);
SMTOPT_API smtopt_outcome smtopt_result_outcome(const smtopt_result* result);
/* Objective in the model's own sense; SMTOPT_ERR_INVALID_ARGUMENT when the
 * outcome carries no value. */
SMTOPT_API smtopt_status smtopt_result_value(const smtopt_result* result, char** exact, char** decimal);
/* Winning vector name, or SMTOPT_ERR_INVALID_ARGUMENT without a winner. */
SMTOPT_API smtopt_status smtopt_result_winner(const smtopt_result* result, char** name);
SMTOPT_API smtopt_status smtopt_result_reason(const smtopt_result* result, char** reason);
SMTOPT_API double smtopt_result_wall_seconds(const smtopt_result* result);
SMTOPT_API size_t smtopt_result_num_conflicts(const smtopt_result* result);
SMTOPT_API smtopt_status smtopt_result_to_json(const smtopt_result* result, char** json);
/* Witness value of a variable by name, exact form. */
SMTOPT_API smtopt_status smtopt_result_variable(const smtopt_result* result, const smtopt_model* model,
                                                const char* name, char** value);

/* Runtime grid from worker logs; csv != 0 selects CSV. */
SMTOPT_API smtopt_status smtopt_report_table(const char* log_dir, int csv, char** table);

/* Brute-force reference optimum; writes the JSON form of the outcome. */
SMTOPT_API smtopt_status smtopt_oracle_brute_force(const smtopt_model* model, const char* grid,
                                                   const char* lipschitz, char** json);

#ifdef __cplusplus
}
#endif

#endif /* SMTOPT_SMTOPT_H_ */
