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

#ifndef SMTOPT_RATIONAL_HPP_
#define SMTOPT_RATIONAL_HPP_

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace smtopt {

// Exact rational. GMP keeps results of arithmetic in canonical form; every
// constructor path in this project goes through parse_rat or integer
// literals, which are canonical as well.
using Rat = mpq_class;

// A bound that may be infinite. For a lower bound std::nullopt means -inf,
// for an upper bound it means +inf.
using Bound = std::optional<Rat>;

// Parses "12", "-3/4", "1.25", "-2.5e-3", "1E+2". Throws Error(MalformedNumber)
// on anything else.
Rat parse_rat(std::string_view text);

// Same as parse_rat but returns nullopt instead of throwing.
std::optional<Rat> try_parse_rat(std::string_view text);

Rat rat_floor(const Rat& r);
Rat rat_ceil(const Rat& r);
bool is_integral(const Rat& r);

// 2^k as an exact rational.
Rat pow2(unsigned k);

// "p" or "p/q" in lowest terms.
std::string to_string(const Rat& r);

// Decimal rendering truncated toward zero after `digits` fractional digits.
std::string to_decimal(const Rat& r, int digits = 9);

// Nearest double; for logging and timing only, never for decisions.
double to_double(const Rat& r);

}  // namespace smtopt

#endif  // SMTOPT_RATIONAL_HPP_
