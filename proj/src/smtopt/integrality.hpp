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

// Integrality management: disjunctive cut loops around a feasibility check.

#ifndef SMTOPT_INTEGRALITY_HPP_
#define SMTOPT_INTEGRALITY_HPP_

#include <cstddef>
#include <vector>

#include "smtopt/model.hpp"
#include "smtopt/smt_session.hpp"

namespace smtopt {

enum class IntegralityMode { kOneByOne, kAllInOne, kDisabled };

std::string_view integrality_mode_name(IntegralityMode mode);

struct CutStats {
  std::size_t cuts_added = 0;
  std::size_t repair_iterations = 0;
  // Largest number of cuts a single integral_check_sat call needed.
  std::size_t max_cuts_per_check = 0;
  friend bool operator==(const CutStats&, const CutStats&) = default;
};

// (x <= floor(v)) or (x >= ceil(v)). Throws Error(kIntegerValue) if v is an
// integer.
Disjunction cut_for(VarId x, const Rat& v);

// 10 * sum(u - l) over integer variables when all are bounded, else 1e5.
std::size_t default_max_cut_rounds(const Model& model);

// Checks satisfiability of the solver's assertions subject to the
// integrality of `model`'s integer variables. In cut modes every fractional
// model triggers permanent cuts (lowest id first for OneByOne, all
// violators for AllInOne) and a re-check, so a Sat result is always
// integral. Exceeding max_rounds yields Unknown.
// Every cut asserted is also appended to `added` when given.
SatResult integral_check_sat(IncrementalSolver& solver, const Model& model, IntegralityMode mode,
                             std::size_t max_rounds, CutStats& stats, std::vector<Disjunction>* added = nullptr);

}  // namespace smtopt

#endif  // SMTOPT_INTEGRALITY_HPP_
