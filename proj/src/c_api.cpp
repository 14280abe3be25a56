// Copyright 2026 The smtopt Authors
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


#include <cctype>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "smtopt/error.hpp"
#include "smtopt/json_io.hpp"
#include "smtopt/mps_parser.hpp"
#include "smtopt/oracle.hpp"
#include "smtopt/osil_parser.hpp"
#include "smtopt/portfolio.hpp"
#include "smtopt/report.hpp"
#include "smtopt/smtopt.h"

struct smtopt_model {
  smtopt::Model model;
};

struct smtopt_config {
  smtopt::Rat eps{1, 1000};
  double timeout_s = 1800;
  smtopt::SolverConfig solver;
  std::string vectors;
  smtopt::PortfolioOptions options;
};

struct smtopt_result {
  smtopt::PortfolioResult result;
};

namespace {

thread_local std::string g_last_error;

smtopt_status status_for(smtopt::ErrorCode code) {
  using smtopt::ErrorCode;
  switch (code) {
    case ErrorCode::kIo:
      return SMTOPT_ERR_IO;
    case ErrorCode::kMalformedNumber:
    case ErrorCode::kUnsupportedOperator:
    case ErrorCode::kMultipleObjectives:
    case ErrorCode::kMalformedDocument:
    case ErrorCode::kInconsistentCounts:
    case ErrorCode::kUnknownSection:
    case ErrorCode::kDuplicateRow:
    case ErrorCode::kUnknownRowReference:
    case ErrorCode::kMalformedField:
      return SMTOPT_ERR_PARSE;
    case ErrorCode::kInvalidVector:
      return SMTOPT_ERR_INVALID_VECTOR;
    case ErrorCode::kSpawnFailure:
    case ErrorCode::kHandshakeFailure:
    case ErrorCode::kSolverDied:
    case ErrorCode::kProtocolError:
      return SMTOPT_ERR_SOLVER;
    case ErrorCode::kMissingLogs:
      return SMTOPT_ERR_MISSING_LOGS;
    case ErrorCode::kTooLarge:
      return SMTOPT_ERR_TOO_LARGE;
    default:
      return SMTOPT_ERR_INVALID_ARGUMENT;
  }
}

smtopt_status fail(smtopt_status s, std::string message) {
  g_last_error = std::move(message);
  return s;
}

// Runs `body`, mapping exceptions to status codes.
template <typename F>
smtopt_status guarded(F&& body, smtopt_status error_default = SMTOPT_ERR_INTERNAL) {
  try {
    g_last_error.clear();
    return body();
  } catch (const smtopt::Error& e) {
    return fail(status_for(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SMTOPT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(error_default, e.what());
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

bool ends_with(const std::string& s, const char* suffix) {
  size_t n = std::strlen(suffix);
  if (s.size() < n) return false;
  for (size_t i = 0; i < n; ++i) {
    if (std::tolower(static_cast<unsigned char>(s[s.size() - n + i])) != suffix[i]) return false;
  }
  return true;
}

smtopt::Model parse_model(std::string_view text, smtopt_format format, int free_lb) {
  if (format == SMTOPT_FORMAT_AUTO) {
    auto first = text.find_first_not_of(" \t\r\n");
    format = first != std::string_view::npos && text[first] == '<' ? SMTOPT_FORMAT_OSIL : SMTOPT_FORMAT_MPS;
  }
  if (format == SMTOPT_FORMAT_OSIL) return smtopt::parse_osil(text, smtopt::OsilOptions{free_lb != 0});
  if (format == SMTOPT_FORMAT_MPS) return smtopt::parse_mps(text);
  throw smtopt::Error(smtopt::ErrorCode::kInvalidArgument, "unknown format");
}

}  // namespace

extern "C" {

const char* smtopt_last_error(void) { return g_last_error.c_str(); }

const char* smtopt_version(void) { return "0.1.0"; }

void smtopt_string_free(char* s) { std::free(s); }

smtopt_status smtopt_model_load_file(const char* path, smtopt_format format, int free_default_lower_bound,
                                     smtopt_model** out) {
  if (!path || !out) return fail(SMTOPT_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::ifstream in(path, std::ios::binary);
    if (!in) return fail(SMTOPT_ERR_IO, std::string("cannot open ") + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    smtopt_format f = format;
    if (f == SMTOPT_FORMAT_AUTO) {
      std::string p(path);
      if (ends_with(p, ".osil") || ends_with(p, ".xml")) f = SMTOPT_FORMAT_OSIL;
      if (ends_with(p, ".mps")) f = SMTOPT_FORMAT_MPS;
    }
    auto m = std::make_unique<smtopt_model>();
    m->model = parse_model(buf.str(), f, free_default_lower_bound);
    *out = m.release();
    return SMTOPT_OK;
  }, SMTOPT_ERR_PARSE);
}

smtopt_status smtopt_model_load_buffer(const char* data, size_t size, smtopt_format format,
                                       int free_default_lower_bound, smtopt_model** out) {
  if (!data || !out) return fail(SMTOPT_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto m = std::make_unique<smtopt_model>();
    m->model = parse_model(std::string_view(data, size), format, free_default_lower_bound);
    *out = m.release();
    return SMTOPT_OK;
  }, SMTOPT_ERR_PARSE);
}

void smtopt_model_free(smtopt_model* model) { delete model; }

size_t smtopt_model_num_variables(const smtopt_model* model) { return model ? model->model.variables.size() : 0; }

size_t smtopt_model_num_constraints(const smtopt_model* model) {
  return model ? model->model.constraints.size() : 0;
}

const char* smtopt_model_class(const smtopt_model* model) {
  if (!model) return "";
  return smtopt::problem_class_name(smtopt::classify(model->model)).data();
}

smtopt_config* smtopt_config_new(void) {
  try {
    return new smtopt_config();
  } catch (...) {
    return nullptr;
  }
}

void smtopt_config_free(smtopt_config* config) { delete config; }

smtopt_status smtopt_config_set_accuracy(smtopt_config* config, const char* accuracy) {
  if (!config || !accuracy) return fail(SMTOPT_ERR_INVALID_ARGUMENT, "null argument");
  auto eps = smtopt::try_parse_rat(accuracy);
  if (!eps || *eps <= 0) return fail(SMTOPT_ERR_INVALID_ARGUMENT, std::string("bad accuracy '") + accuracy + "'");
  config->eps = *eps;
  return SMTOPT_OK;
}

smtopt_status smtopt_config_set_timeout(smtopt_config* config, double seconds) {
  if (!config) return fail(SMTOPT_ERR_INVALID_ARGUMENT, "null argument");
  if (!(seconds >= 0)) return fail(SMTOPT_ERR_INVALID_ARGUMENT, "timeout must be >= 0");
  config->timeout_s = seconds;
  return SMTOPT_OK;
}

smtopt_status smtopt_config_set_solver(smtopt_config* config, const char* command) {
  if (!config || !command || !*command) return fail(SMTOPT_ERR_INVALID_ARGUMENT, "empty solver command");
  config->solver.command = command;
  return SMTOPT_OK;
}

smtopt_status smtopt_config_add_solver_arg(smtopt_config* config, const char* arg) {
  if (!config || !arg) return fail(SMTOPT_ERR_INVALID_ARGUMENT, "null argument");
  config->solver.args.emplace_back(arg);
  return SMTOPT_OK;
}

smtopt_status smtopt_config_set_check_timeout(smtopt_config* config, long long ms) {
  if (!config) return fail(SMTOPT_ERR_INVALID_ARGUMENT, "null argument");
  if (ms > 0) {
    config->solver.per_check_timeout = std::chrono::milliseconds(ms);
  } else {
    config->solver.per_check_timeout.reset();
  }
  return SMTOPT_OK;
}

smtopt_status smtopt_config_set_jobs(smtopt_config* config, size_t jobs) {
  if (!config) return fail(SMTOPT_ERR_INVALID_ARGUMENT, "null argument");
  config->options.jobs = jobs;
  return SMTOPT_OK;
}

smtopt_status smtopt_config_set_vectors(smtopt_config* config, const char* spec) {
  if (!config) return fail(SMTOPT_ERR_INVALID_ARGUMENT, "null argument");
  config->vectors = spec ? spec : "";
  return SMTOPT_OK;
}

smtopt_status smtopt_config_set_log_dir(smtopt_config* config, const char* dir) {
  if (!config) return fail(SMTOPT_ERR_INVALID_ARGUMENT, "null argument");
  if (dir && *dir) {
    config->options.log_dir = dir;
  } else {
    config->options.log_dir.reset();
  }
  return SMTOPT_OK;
}

smtopt_status smtopt_config_set_benchmark(smtopt_config* config, const char* name) {
  if (!config || !name || !*name) return fail(SMTOPT_ERR_INVALID_ARGUMENT, "empty benchmark name");
  config->options.benchmark = name;
  return SMTOPT_OK;
}

smtopt_status smtopt_config_set_sequential(smtopt_config* config, int on) {
  if (!config) return fail(SMTOPT_ERR_INVALID_ARGUMENT, "null argument");
  config->options.sequential = on != 0;
  return SMTOPT_OK;
}

smtopt_status smtopt_config_set_cross_check(smtopt_config* config, int on) {
  if (!config) return fail(SMTOPT_ERR_INVALID_ARGUMENT, "null argument");
  config->options.cross_check = on != 0;
  return SMTOPT_OK;
}

smtopt_status smtopt_solve(const smtopt_model* model, const smtopt_config* config, smtopt_result** out) {
  if (!model || !config || !out) return fail(SMTOPT_ERR_INVALID_ARGUMENT, "null argument");
  if (config->solver.command.empty()) return fail(SMTOPT_ERR_INVALID_ARGUMENT, "no solver command configured");
  return guarded([&] {
    smtopt::PortfolioOptions opt = config->options;
    opt.eps = config->eps;
    if (config->timeout_s > 0) {
      opt.timeout = std::chrono::milliseconds(static_cast<long long>(config->timeout_s * 1000));
    }
    std::vector<smtopt::FeatureVector> vectors =
        config->vectors.empty()
            ? smtopt::default_vectors(smtopt::classify(model->model), config->solver)
            : smtopt::select_vectors(config->vectors, model->model, config->solver);
    auto r = std::make_unique<smtopt_result>();
    r->result = smtopt::run_portfolio(model->model, vectors, opt);
    *out = r.release();
    return SMTOPT_OK;
  });
}

void smtopt_result_free(smtopt_result* result) { delete result; }

smtopt_outcome smtopt_result_outcome(const smtopt_result* result) {
  if (!result) return SMTOPT_UNKNOWN;
  switch (result->result.outcome.kind) {
    case smtopt::OutcomeKind::kOptimal:
      return SMTOPT_OPTIMAL;
    case smtopt::OutcomeKind::kInfeasible:
      return SMTOPT_INFEASIBLE;
    case smtopt::OutcomeKind::kBoundExceeded:
      return SMTOPT_BOUND_EXCEEDED;
    case smtopt::OutcomeKind::kUnknown:
      break;
  }
  return SMTOPT_UNKNOWN;
}

smtopt_status smtopt_result_value(const smtopt_result* result, char** exact, char** decimal) {
  if (!result) return fail(SMTOPT_ERR_INVALID_ARGUMENT, "null argument");
  const auto& v = result->result.outcome.value;
  if (!v) return fail(SMTOPT_ERR_INVALID_ARGUMENT, "outcome has no value");
  return guarded([&] {
    if (exact) *exact = dup(smtopt::to_string(*v));
    if (decimal) *decimal = dup(smtopt::to_decimal(*v, 9));
    return SMTOPT_OK;
  });
}

smtopt_status smtopt_result_winner(const smtopt_result* result, char** name) {
  if (!result || !name) return fail(SMTOPT_ERR_INVALID_ARGUMENT, "null argument");
  if (!result->result.winner) return fail(SMTOPT_ERR_INVALID_ARGUMENT, "no winner");
  return guarded([&] {
    *name = dup(smtopt::vector_name(*result->result.winner));
    return SMTOPT_OK;
  });
}

smtopt_status smtopt_result_reason(const smtopt_result* result, char** reason) {
  if (!result || !reason) return fail(SMTOPT_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *reason = dup(result->result.outcome.reason);
    return SMTOPT_OK;
  });
}

double smtopt_result_wall_seconds(const smtopt_result* result) {
  return result ? result->result.wall_ms / 1000.0 : 0.0;
}

size_t smtopt_result_num_conflicts(const smtopt_result* result) {
  return result ? result->result.conflicts.size() : 0;
}

smtopt_status smtopt_result_to_json(const smtopt_result* result, char** json) {
  if (!result || !json) return fail(SMTOPT_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *json = dup(smtopt::encode(result->result).dump(2));
    return SMTOPT_OK;
  });
}

smtopt_status smtopt_result_variable(const smtopt_result* result, const smtopt_model* model, const char* name,
                                     char** value) {
  if (!result || !model || !name || !value) return fail(SMTOPT_ERR_INVALID_ARGUMENT, "null argument");
  auto id = model->model.find_variable(name);
  if (!id) return fail(SMTOPT_ERR_INVALID_ARGUMENT, std::string("no variable '") + name + "'");
  const auto& w = result->result.outcome.witness;
  if (!w || *id >= w->size()) return fail(SMTOPT_ERR_INVALID_ARGUMENT, "outcome has no witness");
  return guarded([&] {
    *value = dup(smtopt::to_string((*w)[*id]));
    return SMTOPT_OK;
  });
}

smtopt_status smtopt_report_table(const char* log_dir, int csv, char** table) {
  if (!log_dir || !table) return fail(SMTOPT_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    smtopt::ReportTable t = smtopt::load_report(log_dir);
    *table = dup(csv ? smtopt::render_csv(t) : smtopt::render_text(t));
    return SMTOPT_OK;
  });
}

smtopt_status smtopt_oracle_brute_force(const smtopt_model* model, const char* grid, const char* lipschitz,
                                        char** json) {
  if (!model || !json) return fail(SMTOPT_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    smtopt::OracleOptions opt;
    if (grid) opt.grid = smtopt::parse_rat(grid);
    if (lipschitz) opt.lipschitz = smtopt::parse_rat(lipschitz);
    smtopt::OracleResult r = smtopt::brute_force(model->model, opt);
    smtopt::Json j = smtopt::encode(r.outcome);
    j["tolerance"] = smtopt::to_string(r.tolerance);
    j["points"] = r.points;
    *json = dup(j.dump(2));
    return SMTOPT_OK;
  });
}

}  // extern "C"
