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


#include "smtopt/smt_session.hpp"

#include "doctest.h"
#include "smtopt/error.hpp"
#include "smtopt/model_text.hpp"
#include "support.hpp"

#include <thread>

namespace smtopt {
namespace {

using testing::fake_solver;
using testing::real_solver;

Model one_var(const char* kind = "C", const char* lo = "0", const char* hi = "10") {
  return model_from_text(std::string("var \"x\" ") + kind + " " + lo + " " + hi + "\nobj min 0 #0\n");
}

TEST_SUITE("smt_session") {

TEST_CASE("literals") {
  CHECK(SmtEmitter::literal(Rat(3)) == "3");
  CHECK(SmtEmitter::literal(Rat(-3)) == "(- 3)");
  CHECK(SmtEmitter::literal(Rat(7, 2)) == "(/ 7 2)");
  CHECK(SmtEmitter::literal(Rat(-1, 4)) == "(- (/ 1 4))");
}

TEST_CASE("emitter terms") {
  SmtEmitter em;
  em.declare(0, "x", Sort::kReal);
  em.declare(1, "n", Sort::kInt);
  em.declare(2, "odd name", Sort::kReal);
  em.declare(3, "x", Sort::kReal);
  CHECK(em.symbol(2) == "|odd name|");
  CHECK(em.symbol(3) != "x");
  CHECK(em.term(Expr::sum({Expr::var(0), Expr::var(1)})) == "(+ x (to_real n))");
  CHECK(em.term(Expr::power(Expr::var(0), Expr::constant(3))) == "(* x x x)");
  CHECK(em.term(Expr::power(Expr::var(0), Expr::constant(0))) == "1");
  CHECK(em.term(Expr::exp(Expr::negate(Expr::var(0)))) == "(exp (- x))");
  CHECK_THROWS_AS(em.term(Expr::power(Expr::var(0), Expr::constant(Rat(1, 2)))), Error);
  CHECK_THROWS_AS(em.term(Expr::power(Expr::var(0), Expr::constant(100))), Error);
  CHECK_THROWS_AS(em.term(Expr::var(9)), Error);

  SmtEmitter native(true);
  native.declare(0, "x", Sort::kReal);
  CHECK(native.term(Expr::power(Expr::var(0), Expr::constant(100))) == "(^ x 100)");
}

TEST_CASE("emitter formulas") {
  SmtEmitter em;
  em.declare(0, "x", Sort::kReal);
  Atom le{Expr::var(0), Cmp::kLe, Expr::constant(1)};
  Atom ge{Expr::var(0), Cmp::kGe, Expr::constant(2)};
  Disjunction d{{le, ge}, Origin::kCut};
  CHECK(em.formula(Formula::of(d)) == "(or (<= x 1) (>= x 2))");
  auto cmds = em.assert_commands(Formula::all_of({Formula::of(le), Formula::of(ge)}));
  REQUIRE(cmds.size() == 2);
  CHECK(cmds[0] == "(assert (<= x 1))");
  CHECK(em.formula(Formula::any_of({})) == "false");
}

TEST_CASE("parse_smt_value") {
  CHECK(parse_smt_value("5") == Rat(5));
  CHECK(parse_smt_value("(- 5)") == Rat(-5));
  CHECK(parse_smt_value("(/ 3.0 2.0)") == Rat(3, 2));
  CHECK(parse_smt_value("(- (/ 1 4))") == Rat(-1, 4));
  CHECK(parse_smt_value("(/ (- 1) 4)") == Rat(-1, 4));
  CHECK(parse_smt_value("(to_real 7)") == Rat(7));
  CHECK(parse_smt_value("0.25") == Rat(1, 4));
  CHECK_FALSE(parse_smt_value("(root-obj (+ (^ x 2) (- 2)) 1)").has_value());
  CHECK_FALSE(parse_smt_value("(/ 1 0)").has_value());
  CHECK_FALSE(parse_smt_value("banana").has_value());
}

TEST_CASE("fake solver: unknown carries the reason") {
  auto s = SmtSession::open(fake_solver("unknown"), one_var(), false);
  SatResult r = s.check_sat();
  CHECK(r.status == SatStatus::kUnknown);
  CHECK(r.reason == "incomplete");
}

TEST_CASE("fake solver: algebraic model values are reported as unparseable") {
  auto s = SmtSession::open(fake_solver("algebraic"), one_var(), false);
  SatResult r = s.check_sat();
  CHECK(r.status == SatStatus::kSat);
  CHECK_FALSE(r.assignment.has_value());
}

TEST_CASE("fake solver: sat-after") {
  auto s = SmtSession::open(fake_solver("sat-after", {"1"}), one_var(), false);
  CHECK(s.check_sat().status == SatStatus::kUnknown);
  SatResult r = s.check_sat();
  CHECK(r.status == SatStatus::kSat);
  REQUIRE(r.assignment.has_value());
  CHECK(r.assignment->at(0) == 0);
  CHECK(s.num_checks() == 2);
}

TEST_CASE("fake solver: failures") {
  try {
    auto s = SmtSession::open(fake_solver("nohello"), one_var(), false);
    FAIL("expected a handshake failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kHandshakeFailure);
  }
  {
    auto s = SmtSession::open(fake_solver("die"), one_var(), false);
    try {
      s.check_sat();
      FAIL("expected SolverDied");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kSolverDied);
    }
  }
  {
    auto s = SmtSession::open(fake_solver("garbage"), one_var(), false);
    try {
      s.check_sat();
      FAIL("expected ProtocolError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kProtocolError);
    }
  }
  {
    SolverConfig c = fake_solver("hang");
    c.per_check_timeout = std::chrono::milliseconds(200);
    auto s = SmtSession::open(c, one_var(), false);
    SatResult r = s.check_sat();
    CHECK(r.status == SatStatus::kUnknown);
    CHECK(r.reason == "timeout");
    CHECK_FALSE(s.alive());
  }
  try {
    SolverConfig c;
    c.command = "/nonexistent/solver";
    auto s = SmtSession::open(c, one_var(), false);
    FAIL("expected a spawn failure");
  } catch (const Error& e) {
    CHECK((e.code() == ErrorCode::kSpawnFailure || e.code() == ErrorCode::kHandshakeFailure));
  }
}

TEST_CASE("fake solver: cancellation interrupts a hanging check") {
  std::stop_source src;
  CancelToken tok{src.get_token(), std::nullopt};
  auto s = SmtSession::open(fake_solver("hang"), one_var(), false, tok);
  std::jthread canceller([&] {
    std::this_thread::sleep_for(std::chrono::milliseconds(100));
    src.request_stop();
  });
  try {
    s.check_sat();
    FAIL("expected Cancelled");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kCancelled);
  }
}

TEST_CASE("push and pop mirror depth") {
  auto s = SmtSession::open(fake_solver("unknown"), one_var(), false);
  CHECK(s.depth() == 0);
  s.push();
  s.push();
  CHECK(s.depth() == 2);
  s.pop();
  s.pop();
  try {
    s.pop();
    FAIL("expected PopOnEmptyStack");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kPopOnEmptyStack);
  }
}

TEST_CASE("real solver round trip") {
  auto solver = real_solver();
  if (!solver) {
    MESSAGE("no SMT solver found; skipping");
    return;
  }
  Model m = model_from_text(R"(
var "x" C 0 10
var "n" I 0 10
obj min 0 #0
con "c" parsed 5/2 inf (+ #0 #1)
con "d" parsed -inf 1/2 (- #0 #1)
)");
  auto s = SmtSession::open(*solver, m, true, {}, true);
  SatResult r = s.check_sat();
  REQUIRE(r.status == SatStatus::kSat);
  REQUIRE(r.assignment.has_value());
  CHECK(is_integral(r.assignment->at(1)));
  CHECK(check_feasible_point(m, *r.assignment, 0));

  s.push();
  s.assert_formula(Formula::of(Atom{Expr::var(0), Cmp::kLe, Expr::constant(Rat(1, 2))}));
  s.assert_formula(Formula::of(Atom{Expr::var(1), Cmp::kLe, Expr::constant(1)}));
  CHECK(s.check_sat().status == SatStatus::kUnsat);
  s.pop();
  CHECK(s.check_sat().status == SatStatus::kSat);

  VarId extra = s.declare("obj", Sort::kReal);
  CHECK(extra == 2);
  s.assert_formula(Formula::of(Atom{Expr::var(extra), Cmp::kEq, Expr::constant(Rat(-7, 3))}));
  r = s.check_sat();
  REQUIRE(r.assignment.has_value());
  CHECK(r.assignment->size() == 3);
  CHECK(r.assignment->at(2) == Rat(-7, 3));
  CHECK_FALSE(s.transcript().empty());
}

}  // TEST_SUITE

}  // namespace
}  // namespace smtopt
