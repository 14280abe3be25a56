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

// Solver discovery and small helpers for tests.

#ifndef SMTOPT_TESTS_SUPPORT_HPP_
#define SMTOPT_TESTS_SUPPORT_HPP_

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "smtopt/smt_session.hpp"

namespace smtopt::testing {

// $MINLP_SMT_SOLVER, else z3 from PATH. nullopt when neither exists.
inline std::optional<SolverConfig> real_solver() {
  std::string cmd;
  if (const char* env = std::getenv("MINLP_SMT_SOLVER")) cmd = env;
  if (cmd.empty()) cmd = "z3";
  std::filesystem::path found;
  if (cmd.find('/') != std::string::npos) {
    found = cmd;
  } else if (const char* path = std::getenv("PATH")) {
    std::string p = path;
    size_t start = 0;
    while (start <= p.size()) {
      size_t end = p.find(':', start);
      if (end == std::string::npos) end = p.size();
      std::filesystem::path candidate = std::filesystem::path(p.substr(start, end - start)) / cmd;
      if (std::filesystem::exists(candidate)) {
        found = candidate;
        break;
      }
      start = end + 1;
    }
  }
  if (found.empty() || !std::filesystem::exists(found)) return std::nullopt;
  SolverConfig c;
  c.command = found.string();
  if (found.filename() == "z3") c.args = {"-in"};
  if (found.filename() == "cvc5") c.args = {"--lang=smt2", "--incremental"};
  return c;
}

inline SolverConfig fake_solver(const std::string& mode, std::vector<std::string> extra = {}) {
  SolverConfig c;
  c.command = SMTOPT_FAKE_SOLVER;
  c.args.push_back(mode);
  for (auto& e : extra) c.args.push_back(std::move(e));
  return c;
}

}  // namespace smtopt::testing

#endif  // SMTOPT_TESTS_SUPPORT_HPP_
