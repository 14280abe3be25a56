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


#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "smtopt/error.hpp"
#include "smtopt/json_io.hpp"
#include "smtopt/model_text.hpp"
#include "smtopt/oracle.hpp"
#include "smtopt/report.hpp"

namespace smtopt {
namespace {

WorkerRecord sample_worker() {
  WorkerRecord w;
  w.vector = FeatureVector{PreprocessMode::kBinarize, IntegralityMode::kAllInOne, CrMethod::kHybrid,
                           SolverConfig::z3("/usr/bin/z3")};
  w.vector.solver.per_check_timeout = std::chrono::milliseconds(250);
  w.outcome.kind = OutcomeKind::kOptimal;
  w.outcome.value = Rat(-7, 3);
  w.outcome.witness = Assignment{Rat(1), Rat(-1, 2)};
  w.outcome.bracket = Bracket{Rat(-2), Rat(-7, 3)};
  w.started = true;
  w.wall_ms = 12.5;
  w.cuts = {3, 2};
  w.probes = 17;
  return w;
}

TEST_SUITE("json_io") {

TEST_CASE("rationals are strings") {
  CHECK(encode(Rat(-7, 3)) == Json("-7/3"));
  CHECK(decode_rat(Json("5")) == 5);
  CHECK_THROWS_AS(decode_rat(Json(4)), Error);
  CHECK_THROWS_AS(decode_rat(Json("x")), Error);
  CHECK_THROWS_AS(decode_rat(Json::array()), Error);
}

TEST_CASE("worker and result round trip") {
  WorkerRecord w = sample_worker();
  CHECK(decode_worker(encode(w)) == w);
  CHECK(encode(w)["vector"]["name"] == "bin_allinone-hybrid");

  PortfolioResult r;
  r.winner = w.vector;
  r.outcome = w.outcome;
  r.objective_negated = true;
  r.workers = {w, WorkerRecord{}};
  r.workers[1].cancelled = true;
  r.conflicts = {"a vs b"};
  r.wall_ms = 99;
  Json j = encode(r);
  CHECK(decode_result(Json::parse(j.dump())) == r);
  CHECK(j["outcome"]["status"] == "Optimal");
  CHECK(j["outcome"]["value_decimal"] == "-2.333333333");
}

TEST_CASE("malformed documents") {
  CHECK_THROWS_AS(decode_outcome(Json::object()), Error);
  CHECK_THROWS_AS(decode_outcome(Json{{"status", "Sideways"}}), Error);
  CHECK_THROWS_AS(decode_vector(Json{{"preprocess", "NoPre"}}), Error);
}

TEST_CASE("probe records") {
  ProbeRecord p;
  p.phase = "bisect";
  p.bound = Rat(1, 2);
  p.verdict = SatStatus::kUnsat;
  p.lo = Rat(1, 2);
  p.hi = Rat(1);
  Json j = encode(p);
  CHECK(j["type"] == "probe");
  CHECK(j["verdict"] == "unsat");
  CHECK(j["bound"] == "1/2");
}

}  // TEST_SUITE

TEST_SUITE("report") {

void write_log(const std::filesystem::path& dir, const std::string& bench, const WorkerRecord& w) {
  std::ofstream out(dir / (bench + "__" + vector_name(w.vector) + ".jsonl"));
  out << Json{{"type", "start"}, {"benchmark", bench}, {"vector", vector_name(w.vector)}}.dump() << '\n';
  Json res = encode(w);
  res["type"] = "result";
  res["benchmark"] = bench;
  out << res.dump() << '\n';
}

TEST_CASE("empty directory") {
  auto dir = std::filesystem::temp_directory_path() / "smtopt_report_empty";
  std::filesystem::create_directories(dir);
  try {
    load_report(dir);
    FAIL("expected MissingLogs");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMissingLogs);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("table from logs") {
  auto dir = std::filesystem::temp_directory_path() / "smtopt_report_table";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);

  WorkerRecord ubs;
  ubs.vector.cr = CrMethod::kUbs;
  ubs.vector.solver = SolverConfig::z3();
  ubs.outcome.kind = OutcomeKind::kOptimal;
  ubs.outcome.value = 1;
  ubs.started = true;
  ubs.wall_ms = 1234;
  WorkerRecord naive = ubs;
  naive.vector.cr = CrMethod::kNaive;
  naive.outcome = OptOutcome::unknown("timeout");
  WorkerRecord hybrid = ubs;
  hybrid.vector.cr = CrMethod::kHybrid;
  hybrid.cancelled = true;
  hybrid.outcome = OptOutcome::unknown("cancelled");
  write_log(dir, "alpha", ubs);
  write_log(dir, "alpha", naive);
  write_log(dir, "alpha", hybrid);
  WorkerRecord beta = ubs;
  beta.outcome.kind = OutcomeKind::kBoundExceeded;
  write_log(dir, "beta", beta);

  ReportTable t = load_report(dir);
  REQUIRE(t.benchmarks == std::vector<std::string>{"alpha", "beta"});
  REQUIRE(t.columns == std::vector<std::string>{"U.B.S", "Naive", "Hybrid"});
  CHECK(t.cells[0] == std::vector<std::string>{"1.23", "timeout", "cancelled"});
  CHECK(t.cells[1] == std::vector<std::string>{"unbounded", "", ""});
  std::string text = render_text(t);
  CHECK(text.find("alpha") != std::string::npos);
  CHECK(text.find("U.B.S") != std::string::npos);
  std::string csv = render_csv(t);
  CHECK(csv.rfind("benchmark,U.B.S,Naive,Hybrid\n", 0) == 0);
  CHECK(csv.find("beta,unbounded,,\n") != std::string::npos);
  std::filesystem::remove_all(dir);
}

}  // TEST_SUITE

TEST_SUITE("oracle") {

TEST_CASE("integer square") {
  Model m = model_from_text("var \"x\" I -5 5\nobj min 0 (^ #0 2)\ncon \"c\" parsed 3/2 inf #0\n");
  OracleResult r = brute_force(m);
  REQUIRE(r.outcome.kind == OutcomeKind::kOptimal);
  CHECK(*r.outcome.value == 4);
  CHECK(r.outcome.witness->at(0) == 2);
  CHECK(r.points == 11);
}

TEST_CASE("continuous grid") {
  Model m = model_from_text(R"(
var "x" C 0 1
var "y" C 0 1
obj min 0 (+ #0 #1)
con "c" parsed 3/2 inf (+ #0 #1)
)");
  OracleResult r = brute_force(m, {Rat(1, 10), 0});
  REQUIRE(r.outcome.kind == OutcomeKind::kOptimal);
  CHECK(*r.outcome.value == Rat(3, 2));
  CHECK(r.points == 121);
}

TEST_CASE("maximization and infeasibility") {
  Model mx = model_from_text("var \"x\" I 0 4\nobj max 1 #0\n");
  CHECK(*brute_force(mx).outcome.value == 5);
  Model inf = model_from_text("var \"x\" I 0 4\nobj min 0 #0\ncon \"c\" parsed 9/2 inf #0\n");
  CHECK(brute_force(inf).outcome.kind == OutcomeKind::kInfeasible);
}

TEST_CASE("tolerance widens the feasible set") {
  // x*x = 2 has no rational grid solution; with tolerance grid*L it does
  Model m = model_from_text("var \"x\" C 0 2\nobj min 0 #0\ncon \"c\" parsed 2 2 (* #0 #0)\n");
  CHECK(brute_force(m, {Rat(1, 100), 0}).outcome.kind == OutcomeKind::kInfeasible);
  OracleResult r = brute_force(m, {Rat(1, 100), Rat(2)});
  CHECK(r.tolerance == Rat(1, 50));
  REQUIRE(r.outcome.kind == OutcomeKind::kOptimal);
  CHECK(*r.outcome.value == Rat(141, 100));
}

TEST_CASE("rejections") {
  CHECK_THROWS_AS(brute_force(model_from_text("var \"x\" C 0 inf\nobj min 0 #0\n")), Error);
  CHECK_THROWS_AS(brute_force(model_from_text("var \"x\" C 0 1\nobj min 0 (exp #0)\n")), Error);
  CHECK_THROWS_AS(brute_force(model_from_text(
                      "var \"a\" C 0 1\nvar \"b\" C 0 1\nvar \"c\" C 0 1\nobj min 0 (+ #0 #1 #2)\n")),
                  Error);
  CHECK_THROWS_AS(brute_force(model_from_text("var \"x\" I 0 100000000\nobj min 0 #0\n")), Error);
}

}  // TEST_SUITE

}  // namespace
}  // namespace smtopt
