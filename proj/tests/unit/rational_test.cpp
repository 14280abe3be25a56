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


#include "smtopt/rational.hpp"

#include "doctest.h"
#include "smtopt/error.hpp"

namespace smtopt {
namespace {

TEST_SUITE("rational") {

TEST_CASE("parses integers, fractions, decimals and exponents") {
  CHECK(parse_rat("12") == 12);
  CHECK(parse_rat("-3/4") == Rat(-3, 4));
  CHECK(parse_rat("6/8") == Rat(3, 4));
  CHECK(parse_rat("1.25") == Rat(5, 4));
  CHECK(parse_rat("-2.5e-3") == Rat(-1, 400));
  CHECK(parse_rat("1E+2") == 100);
  CHECK(parse_rat(".5") == Rat(1, 2));
  CHECK(parse_rat("  7 ") == 7);
  CHECK(parse_rat("0.001") == Rat(1, 1000));
}

TEST_CASE("rejects malformed numbers") {
  for (const char* bad : {"", "abc", "1/0", "1.2.3", "e5", "--1", "1/-2", "1e", "0x10"}) {
    CAPTURE(bad);
    CHECK_FALSE(try_parse_rat(bad).has_value());
  }
  CHECK_THROWS_AS(parse_rat("x"), Error);
}

TEST_CASE("floor and ceil are exact") {
  CHECK(rat_floor(Rat(-1, 2)) == -1);
  CHECK(rat_ceil(Rat(-1, 2)) == 0);
  CHECK(rat_floor(Rat(12, 5)) == 2);
  CHECK(rat_ceil(Rat(12, 5)) == 3);
  CHECK(rat_floor(Rat(3)) == 3);
  CHECK(rat_ceil(Rat(-3)) == -3);
}

TEST_CASE("decimal rendering truncates toward zero") {
  CHECK(to_decimal(Rat(2, 3), 6) == "0.666666");
  CHECK(to_decimal(Rat(-2, 3), 6) == "-0.666666");
  CHECK(to_decimal(Rat(400), 3) == "400.000");
  CHECK(to_decimal(Rat(-1, 10000000), 3) == "0.000");
  CHECK(to_decimal(Rat(7, 2), 0) == "3");
}

TEST_CASE("string forms") {
  CHECK(to_string(parse_rat("6/4")) == "3/2");
  CHECK(parse_rat("010") == 10);
  CHECK(parse_rat("0.25") == Rat(1, 4));
  CHECK(parse_rat("007/014") == Rat(1, 2));
  CHECK(to_string(Rat(-5)) == "-5");
  CHECK(pow2(10) == 1024);
  CHECK(is_integral(parse_rat("4/2")));
  CHECK_FALSE(is_integral(Rat(1, 3)));
}

}  // TEST_SUITE

}  // namespace
}  // namespace smtopt
