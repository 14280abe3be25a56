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


#include "smtopt/integrality.hpp"

#include <random>

#include "doctest.h"
#include "mocks.hpp"
#include "smtopt/error.hpp"
#include "smtopt/model_text.hpp"

namespace smtopt {
namespace {

using testing::ScriptedSolver;

TEST_SUITE("integrality") {

TEST_CASE("cut examples") {
  Disjunction d = cut_for(0, Rat(12, 5));
  REQUIRE(d.atoms.size() == 2);
  CHECK(d.origin == Origin::kCut);
  CHECK(d.atoms[0] == Atom{Expr::var(0), Cmp::kLe, Expr::constant(2)});
  CHECK(d.atoms[1] == Atom{Expr::var(0), Cmp::kGe, Expr::constant(3)});

  Disjunction n = cut_for(4, Rat(-1, 2));
  CHECK(n.atoms[0].rhs == Expr::constant(-1));
  CHECK(n.atoms[1].rhs == Expr::constant(0));

  try {
    cut_for(0, Rat(3));
    FAIL("expected IntegerValue");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIntegerValue);
  }
}

TEST_CASE("cuts exclude the value and keep every integer") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> num(-1000, 1000);
  std::uniform_int_distribution<int> den(2, 50);
  for (int i = 0; i < 500; ++i) {
    Rat v(num(rng), den(rng));
    v.canonicalize();
    if (is_integral(v)) continue;
    Disjunction d = cut_for(0, v);
    auto sat = [&](const Rat& x) {
      for (const auto& a : d.atoms) {
        if (holds(a, {x})) return true;
      }
      return false;
    };
    CHECK_FALSE(sat(v));
    for (int k = -3; k <= 3; ++k) CHECK(sat(rat_floor(v) + k));
  }
}

TEST_CASE("default round budget") {
  CHECK(default_max_cut_rounds(model_from_text("var \"x\" I 0 5\nvar \"y\" I -2 2\nobj min 0 #0\n")) == 90);
  CHECK(default_max_cut_rounds(model_from_text("var \"x\" I 0 inf\nobj min 0 #0\n")) == 100000);
  CHECK(default_max_cut_rounds(model_from_text("var \"x\" C 0 5\nobj min 0 #0\n")) == 10);
}

TEST_CASE("x >= 3/2 needs one cut") {
  Model m = model_from_text("var \"x\" I 0 10\nobj min 0 #0\ncon \"c\" parsed 3/2 inf #0\n");
  ScriptedSolver s(1);
  s.enqueue(SatResult::sat(Assignment{Rat(3, 2)}));
  s.enqueue(SatResult::sat(Assignment{Rat(2)}));
  CutStats st;
  SatResult r = integral_check_sat(s, m, IntegralityMode::kOneByOne, 100, st);
  CHECK(r.status == SatStatus::kSat);
  CHECK(r.assignment->at(0) == 2);
  CHECK(st.cuts_added == 1);
  CHECK(st.repair_iterations == 1);
  REQUIRE(s.asserted.size() == 1);
  CHECK(s.asserted[0].kind == Formula::Kind::kOr);
}

TEST_CASE("one-by-one cuts the lowest id, all-in-one cuts every violator") {
  Model m = model_from_text("var \"x\" I 0 10\nvar \"y\" I 0 10\nvar \"z\" C 0 10\nobj min 0 #0\n");
  Assignment frac{Rat(1, 2), Rat(7, 3), Rat(1, 3)};
  Assignment whole{Rat(1), Rat(2), Rat(1, 3)};
  {
    ScriptedSolver s(3);
    s.enqueue(SatResult::sat(frac));
    s.enqueue(SatResult::sat(whole));
    CutStats st;
    integral_check_sat(s, m, IntegralityMode::kOneByOne, 100, st);
    CHECK(st.cuts_added == 1);
    REQUIRE(s.asserted.size() == 1);
    CHECK(s.asserted[0].children[0].atom->lhs == Expr::var(0));
  }
  {
    ScriptedSolver s(3);
    s.enqueue(SatResult::sat(frac));
    s.enqueue(SatResult::sat(whole));
    CutStats st;
    integral_check_sat(s, m, IntegralityMode::kAllInOne, 100, st);
    CHECK(st.cuts_added == 2);
    CHECK(st.repair_iterations == 1);
  }
  {
    ScriptedSolver s(3);
    s.enqueue(SatResult::sat(frac));
    CutStats st;
    SatResult r = integral_check_sat(s, m, IntegralityMode::kDisabled, 100, st);
    CHECK(r.status == SatStatus::kSat);
    CHECK(st.cuts_added == 0);
  }
}

TEST_CASE("unsat, unknown, unreadable models and exhausted budgets") {
  Model m = model_from_text("var \"x\" I 0 10\nobj min 0 #0\n");
  CutStats st;
  {
    ScriptedSolver s(1);
    s.enqueue(SatResult::sat(Assignment{Rat(1, 2)}));
    s.enqueue(SatResult::unsat());
    CHECK(integral_check_sat(s, m, IntegralityMode::kOneByOne, 10, st).status == SatStatus::kUnsat);
  }
  {
    ScriptedSolver s(1);
    s.enqueue(SatResult::sat(std::nullopt));
    SatResult r = integral_check_sat(s, m, IntegralityMode::kAllInOne, 10, st);
    CHECK(r.status == SatStatus::kUnknown);
  }
  {
    ScriptedSolver s(1);
    for (int i = 0; i < 5; ++i) s.enqueue(SatResult::sat(Assignment{Rat(2 * i + 1, 2)}));
    SatResult r = integral_check_sat(s, m, IntegralityMode::kOneByOne, 3, st);
    CHECK(r.status == SatStatus::kUnknown);
    CHECK(r.reason.find("cut rounds") != std::string::npos);
  }
}

}  // TEST_SUITE

}  // namespace
}  // namespace smtopt
