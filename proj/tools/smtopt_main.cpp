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


// Command-line front end. Talks to the engine only through the C API.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "smtopt/smtopt.h"

namespace {

constexpr int kExitOptimal = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitBoundExceeded = 3;
constexpr int kExitUsage = 64;
constexpr int kExitParse = 65;
constexpr int kExitNoInput = 66;
constexpr int kExitSoftware = 70;

struct CStr {
  char* p = nullptr;
  ~CStr() { smtopt_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

int report_error(const char* what) {
  std::cerr << "smtopt: " << what << ": " << smtopt_last_error() << '\n';
  return kExitSoftware;
}

smtopt_format format_from(const std::string& name) {
  if (name == "osil") return SMTOPT_FORMAT_OSIL;
  if (name == "mps") return SMTOPT_FORMAT_MPS;
  return SMTOPT_FORMAT_AUTO;
}

// Solvers that read SMT-LIB from stdin only when asked to.
std::vector<std::string> default_solver_args(const std::string& command) {
  std::string base = std::filesystem::path(command).filename().string();
  if (base == "z3") return {"-in"};
  if (base == "cvc5" || base == "cvc4") return {"--lang=smt2", "--incremental"};
  return {};
}

int load(const std::string& path, const std::string& format, bool free_lb, smtopt_model** model) {
  smtopt_status s = smtopt_model_load_file(path.c_str(), format_from(format), free_lb ? 1 : 0, model);
  if (s == SMTOPT_OK) return 0;
  std::cerr << "smtopt: " << path << ": " << smtopt_last_error() << '\n';
  return s == SMTOPT_ERR_IO ? kExitNoInput : kExitParse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MINLP optimization through SMT feasibility checks"};
  app.require_subcommand(0, 1);

  std::string input;
  std::string format = "auto";
  std::string accuracy = "0.001";
  double timeout = 1800;
  long long check_timeout_ms = 0;
  std::string solver;
  std::vector<std::string> solver_args;
  std::size_t jobs = 0;
  std::string vectors;
  std::string log_dir;
  std::string benchmark;
  bool json = false;
  bool seq = false;
  bool cross = false;
  bool free_lb = false;

  app.add_option("input", input, "OSiL or MPS model file");
  app.add_option("--format", format, "Input format")->check(CLI::IsMember({"osil", "mps", "auto"}));
  app.add_option("--accuracy", accuracy, "Absolute accuracy as a rational or decimal")->capture_default_str();
  app.add_option("--timeout", timeout, "Wall-clock limit in seconds (0 = none)")->capture_default_str();
  app.add_option("--check-timeout", check_timeout_ms, "Limit per check-sat in milliseconds (0 = none)");
  app.add_option("--solver", solver, "SMT-LIB 2 solver executable (default: $MINLP_SMT_SOLVER)");
  app.add_option("--solver-arg", solver_args, "Extra solver argument; repeatable")->allow_extra_args(false);
  app.add_option("--jobs", jobs, "Worker threads (0 = one per vector)");
  app.add_option("--vectors", vectors,
                 "Feature vectors, e.g. 'bin_flattening,nobb-ubs'. Families: allinone onebyone nobb "
                 "bin_allinone bin_onebyone bin_flattening; methods: naive ubs hybrid");
  app.add_option("--log-dir", log_dir, "Directory for per-vector JSONL logs");
  app.add_option("--benchmark", benchmark, "Benchmark name used in logs (default: input file stem)");
  app.add_flag("--json", json, "Print the full result as JSON");
  app.add_flag("--seq", seq, "Run the vectors sequentially in a fixed order");
  app.add_flag("--cross-check", cross, "Run every vector to completion and compare outcomes");
  app.add_flag("--osil-free-lb", free_lb, "OSiL variables without lb are free instead of >= 0");

  auto* report = app.add_subcommand("report", "Runtime table from a log directory");
  std::string report_dir;
  bool csv = false;
  report->add_option("log-dir", report_dir, "Directory of JSONL logs")->required();
  report->add_flag("--csv", csv, "CSV instead of aligned text");

  auto* oracle = app.add_subcommand("oracle", "Brute-force reference optimum of a tiny model");
  oracle->group("");
  std::string oracle_input;
  std::string grid = "1/100";
  std::string lipschitz = "0";
  oracle->add_option("input", oracle_input)->required();
  oracle->add_option("--grid", grid);
  oracle->add_option("--lipschitz", lipschitz);
  oracle->add_option("--format", format)->check(CLI::IsMember({"osil", "mps", "auto"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  if (report->parsed()) {
    CStr table;
    smtopt_status s = smtopt_report_table(report_dir.c_str(), csv ? 1 : 0, &table.p);
    if (s != SMTOPT_OK) {
      std::cerr << "smtopt: " << smtopt_last_error() << '\n';
      return s == SMTOPT_ERR_MISSING_LOGS ? kExitNoInput : kExitSoftware;
    }
    std::cout << table.str();
    return 0;
  }

  if (oracle->parsed()) {
    smtopt_model* model = nullptr;
    if (int rc = load(oracle_input, format, free_lb, &model)) return rc;
    CStr out;
    smtopt_status s = smtopt_oracle_brute_force(model, grid.c_str(), lipschitz.c_str(), &out.p);
    smtopt_model_free(model);
    if (s != SMTOPT_OK) {
      std::cerr << "smtopt: " << smtopt_last_error() << '\n';
      return s == SMTOPT_ERR_INVALID_ARGUMENT || s == SMTOPT_ERR_TOO_LARGE ? kExitUsage : kExitSoftware;
    }
    std::cout << out.str() << '\n';
    return 0;
  }

  if (input.empty()) {
    std::cerr << "smtopt: missing input file\n" << app.help();
    return kExitUsage;
  }
  smtopt_model* model = nullptr;
  if (int rc = load(input, format, free_lb, &model)) return rc;

  if (solver.empty()) {
    if (const char* env = std::getenv("MINLP_SMT_SOLVER")) solver = env;
  }
  if (solver.empty()) {
    std::cerr << "smtopt: no solver; pass --solver or set MINLP_SMT_SOLVER\n";
    smtopt_model_free(model);
    return kExitUsage;
  }
  if (solver_args.empty()) solver_args = default_solver_args(solver);

  smtopt_config* config = smtopt_config_new();
  if (benchmark.empty()) benchmark = std::filesystem::path(input).stem().string();
  bool ok = smtopt_config_set_accuracy(config, accuracy.c_str()) == SMTOPT_OK &&
            smtopt_config_set_timeout(config, timeout) == SMTOPT_OK &&
            smtopt_config_set_check_timeout(config, check_timeout_ms) == SMTOPT_OK &&
            smtopt_config_set_solver(config, solver.c_str()) == SMTOPT_OK &&
            smtopt_config_set_jobs(config, jobs) == SMTOPT_OK &&
            smtopt_config_set_vectors(config, vectors.c_str()) == SMTOPT_OK &&
            smtopt_config_set_log_dir(config, log_dir.c_str()) == SMTOPT_OK &&
            smtopt_config_set_benchmark(config, benchmark.c_str()) == SMTOPT_OK &&
            smtopt_config_set_sequential(config, seq ? 1 : 0) == SMTOPT_OK &&
            smtopt_config_set_cross_check(config, cross ? 1 : 0) == SMTOPT_OK;
  for (const auto& a : solver_args) ok = ok && smtopt_config_add_solver_arg(config, a.c_str()) == SMTOPT_OK;
  if (!ok) {
    std::cerr << "smtopt: " << smtopt_last_error() << '\n';
    smtopt_config_free(config);
    smtopt_model_free(model);
    return kExitUsage;
  }

  smtopt_result* result = nullptr;
  smtopt_status s = smtopt_solve(model, config, &result);
  smtopt_config_free(config);
  if (s != SMTOPT_OK) {
    std::cerr << "smtopt: " << smtopt_last_error() << '\n';
    smtopt_model_free(model);
    return s == SMTOPT_ERR_INVALID_VECTOR || s == SMTOPT_ERR_INVALID_ARGUMENT ? kExitUsage : kExitSoftware;
  }

  smtopt_outcome outcome = smtopt_result_outcome(result);
  if (json) {
    CStr text;
    if (smtopt_result_to_json(result, &text.p) != SMTOPT_OK) return report_error("json");
    std::cout << text.str() << '\n';
  } else {
    switch (outcome) {
      case SMTOPT_OPTIMAL:
        std::cout << "optimal\n";
        break;
      case SMTOPT_INFEASIBLE:
        std::cout << "infeasible\n";
        break;
      case SMTOPT_BOUND_EXCEEDED:
        std::cout << "bound exceeded (objective unbounded below)\n";
        break;
      case SMTOPT_UNKNOWN:
        std::cout << "unknown\n";
        break;
    }
    CStr exact;
    CStr decimal;
    if (smtopt_result_value(result, &exact.p, &decimal.p) == SMTOPT_OK) {
      std::cout << "objective  " << exact.str() << '\n' << "decimal    " << decimal.str() << '\n';
    }
    CStr winner;
    if (smtopt_result_winner(result, &winner.p) == SMTOPT_OK) std::cout << "winner     " << winner.str() << '\n';
    if (outcome == SMTOPT_UNKNOWN) {
      CStr reason;
      if (smtopt_result_reason(result, &reason.p) == SMTOPT_OK) std::cout << "reason     " << reason.str() << '\n';
    }
    if (size_t n = smtopt_result_num_conflicts(result)) std::cout << "conflicts  " << n << '\n';
    char time_buf[32];
    std::snprintf(time_buf, sizeof time_buf, "%.3f", smtopt_result_wall_seconds(result));
    std::cout << "time       " << time_buf << " s\n";
  }
  smtopt_result_free(result);
  smtopt_model_free(model);

  switch (outcome) {
    case SMTOPT_OPTIMAL:
      return kExitOptimal;
    case SMTOPT_INFEASIBLE:
      return kExitInfeasible;
    case SMTOPT_BOUND_EXCEEDED:
      return kExitBoundExceeded;
    case SMTOPT_UNKNOWN:
      break;
  }
  return kExitUnknown;
}
