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


#include "smtopt/portfolio.hpp"

#include <filesystem>
#include <fstream>
#include <set>

#include "doctest.h"
#include "smtopt/error.hpp"
#include "smtopt/json_io.hpp"
#include "smtopt/model_text.hpp"
#include "support.hpp"

namespace smtopt {
namespace {

using testing::fake_solver;
using testing::real_solver;

const char* kMinlp = R"(
var "x" I 0 5
var "y" C 0 10
obj min 0 (+ (^ (- #0 5/2) 2) #1)
con "cover" parsed 3 inf (+ #0 #1)
)";

const char* kLp = "var \"x\" C 3 10\nobj max 0 (neg #0)\n";

FeatureVector vec(PreprocessMode p, IntegralityMode i, CrMethod c, SolverConfig s) {
  return FeatureVector{p, i, c, std::move(s)};
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("smtopt_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

TEST_SUITE("portfolio") {

TEST_CASE("default vector sets") {
  SolverConfig s = SolverConfig::z3();
  auto minlp = default_vectors(ProblemClass::kMINLP, s);
  CHECK(minlp.size() == 18);
  std::set<std::string> names;
  for (const auto& v : minlp) names.insert(vector_name(v));
  CHECK(names.size() == 18);
  CHECK(names.count("bin_flattening-ubs"));
  CHECK(names.count("nobb-hybrid"));
  CHECK_FALSE(names.count("naive_flattening-ubs"));

  auto lp = default_vectors(ProblemClass::kNLP, s);
  REQUIRE(lp.size() == 3);
  CHECK(vector_name(lp[0]) == "nobb-ubs");
  CHECK(vector_name(lp[1]) == "nobb-naive");
  CHECK(vector_name(lp[2]) == "nobb-hybrid");
  CHECK(default_vectors(ProblemClass::kBLP, s).size() == 18);
}

TEST_CASE("vector validity") {
  Model minlp = model_from_text(kMinlp);
  Model lp = model_from_text(kLp);
  SolverConfig s = SolverConfig::z3();
  CHECK(vector_problem(vec(PreprocessMode::kBinarizedFlatten, IntegralityMode::kDisabled, CrMethod::kUbs, s), minlp)
            .empty());
  CHECK_FALSE(
      vector_problem(vec(PreprocessMode::kBinarizedFlatten, IntegralityMode::kOneByOne, CrMethod::kUbs, s), minlp)
          .empty());
  CHECK_FALSE(vector_problem(vec(PreprocessMode::kBinarize, IntegralityMode::kDisabled, CrMethod::kUbs, s), lp)
                  .empty());
  CHECK_FALSE(vector_problem(vec(PreprocessMode::kNoPre, IntegralityMode::kAllInOne, CrMethod::kUbs, s), lp).empty());
  CHECK(vector_problem(vec(PreprocessMode::kNoPre, IntegralityMode::kDisabled, CrMethod::kNaive, s), lp).empty());
  CHECK_FALSE(vector_problem(vec(PreprocessMode::kNoPre, IntegralityMode::kDisabled, CrMethod::kUbs, {}), lp).empty());
  CHECK_THROWS_AS(
      validate_vector(vec(PreprocessMode::kNaiveFlatten, IntegralityMode::kAllInOne, CrMethod::kUbs, s), minlp), Error);
}

TEST_CASE("select_vectors") {
  Model minlp = model_from_text(kMinlp);
  Model lp = model_from_text(kLp);
  SolverConfig s = SolverConfig::z3();
  CHECK(select_vectors("all", minlp, s).size() == 18);
  CHECK(select_vectors("all", lp, s).size() == 3);
  CHECK(select_vectors("ubs", minlp, s).size() == 6);
  CHECK(select_vectors("hybrid", lp, s).size() == 1);
  auto two = select_vectors("bin_flattening-ubs,nobb-naive", minlp, s);
  REQUIRE(two.size() == 2);
  CHECK(vector_name(two[0]) == "bin_flattening-ubs");
  CHECK_THROWS_AS(select_vectors("bin_allinone", lp, s), Error);
  CHECK(select_vectors("naive_flattening", minlp, s).size() == 3);
  CHECK_THROWS_AS(select_vectors("bin_allinone-ubs", lp, s), Error);
  CHECK_THROWS_AS(select_vectors("warp-drive", minlp, s), Error);
  try {
    select_vectors("nobb-fast", minlp, s);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidVector);
  }
}

TEST_CASE("unknown-only portfolio") {
  Model lp = normalize_to_min(model_from_text(kLp));
  PortfolioOptions opt;
  opt.sequential = true;
  auto vs = select_vectors("all", lp, fake_solver("unknown"));
  PortfolioResult r = run_portfolio(lp, vs, opt);
  CHECK_FALSE(r.winner.has_value());
  CHECK(r.outcome.kind == OutcomeKind::kUnknown);
  CHECK(r.outcome.reason.find("nobb-ubs: incomplete") != std::string::npos);
  CHECK(r.workers.size() == 3);
}

TEST_CASE("solver death becomes unknown") {
  Model lp = model_from_text(kLp);
  WorkerRecord w = run_worker(normalize_to_min(lp),
                              vec(PreprocessMode::kNoPre, IntegralityMode::kDisabled, CrMethod::kUbs, fake_solver("die")),
                              {});
  CHECK(w.outcome.kind == OutcomeKind::kUnknown);
  CHECK(w.outcome.reason == "solver died");
  CHECK(w.started);
}

TEST_CASE("timeout stops a hanging worker") {
  Model lp = normalize_to_min(model_from_text(kLp));
  PortfolioOptions opt;
  opt.timeout = std::chrono::milliseconds(300);
  auto start = Clock::now();
  PortfolioResult r = run_portfolio(
      lp, {vec(PreprocessMode::kNoPre, IntegralityMode::kDisabled, CrMethod::kUbs, fake_solver("hang"))}, opt);
  CHECK(r.outcome.kind == OutcomeKind::kUnknown);
  CHECK(r.workers[0].outcome.reason == "timeout");
  CHECK(Clock::now() - start < std::chrono::seconds(5));
}

TEST_CASE("real solver: maximization, logs and sequential determinism") {
  auto solver = real_solver();
  if (!solver) {
    MESSAGE("no SMT solver found; skipping");
    return;
  }
  Model lp = model_from_text(kLp);  // max -x, x in [3, 10]: -3
  TempDir dir;
  PortfolioOptions opt;
  opt.sequential = true;
  opt.log_dir = dir.path;
  opt.benchmark = "lp";
  auto vs = select_vectors("nobb-ubs,nobb-hybrid", lp, *solver);
  PortfolioResult a = run_portfolio(lp, vs, opt);
  REQUIRE(a.outcome.kind == OutcomeKind::kOptimal);
  CHECK(a.objective_negated);
  CHECK(*a.outcome.value == -3);
  CHECK(vector_name(*a.winner) == "nobb-ubs");
  REQUIRE(a.outcome.bracket);
  CHECK(a.outcome.bracket->hi == 3);
  CHECK(a.workers.size() == 2);
  CHECK_FALSE(a.workers[1].started);

  auto log = worker_log_path(dir.path, "lp", vs[0]);
  REQUIRE(std::filesystem::exists(log));
  std::ifstream in(log);
  std::string line;
  std::vector<Json> lines;
  while (std::getline(in, line)) lines.push_back(Json::parse(line));
  REQUIRE(lines.size() >= 3);
  CHECK(lines.front()["type"] == "start");
  CHECK(lines[1]["type"] == "probe");
  CHECK(lines.back()["type"] == "result");

  PortfolioResult b = run_portfolio(lp, vs, opt);
  CHECK(b.outcome == a.outcome);
  CHECK(b.winner == a.winner);
}

TEST_CASE("real solver: parallel portfolio cancels the rest") {
  auto solver = real_solver();
  if (!solver) {
    MESSAGE("no SMT solver found; skipping");
    return;
  }
  Model m = model_from_text(kMinlp);
  PortfolioOptions opt;
  opt.timeout = std::chrono::seconds(60);
  auto vs = select_vectors("nobb-ubs,bin_allinone-hybrid,onebyone-ubs", m, *solver);
  vs.push_back(vec(PreprocessMode::kNoPre, IntegralityMode::kDisabled, CrMethod::kUbs, fake_solver("hang")));
  PortfolioResult r = run_portfolio(m, vs, opt);
  REQUIRE(r.outcome.kind == OutcomeKind::kOptimal);
  CHECK(*r.outcome.value - Rat(1, 4) <= Rat(1, 1000));
  CHECK(r.winner.has_value());
  CHECK(r.workers.back().cancelled);
  CHECK(r.workers.back().outcome.kind == OutcomeKind::kUnknown);
}

}  // TEST_SUITE

}  // namespace
}  // namespace smtopt
