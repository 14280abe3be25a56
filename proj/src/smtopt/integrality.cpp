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

#include <algorithm>
#include <string>

#include "smtopt/error.hpp"

namespace smtopt {

std::string_view integrality_mode_name(IntegralityMode mode) {
  switch (mode) {
    case IntegralityMode::kOneByOne:
      return "OneByOne";
    case IntegralityMode::kAllInOne:
      return "AllInOne";
    case IntegralityMode::kDisabled:
      return "Disabled";
  }
  return "?";
}

Disjunction cut_for(VarId x, const Rat& v) {
  if (is_integral(v)) throw Error(ErrorCode::kIntegerValue, to_string(v));
  return Disjunction{{Atom{Expr::var(x), Cmp::kLe, Expr::constant(rat_floor(v))},
                      Atom{Expr::var(x), Cmp::kGe, Expr::constant(rat_ceil(v))}},
                     Origin::kCut};
}

std::size_t default_max_cut_rounds(const Model& model) {
  constexpr std::size_t kFallback = 100000;
  mpz_class total = 0;
  for (const auto& v : model.variables) {
    if (!v.is_integer()) continue;
    if (!v.lower || !v.upper) return kFallback;
    Rat w = rat_floor(*v.upper) - rat_ceil(*v.lower);
    if (w > 0) total += w.get_num();
  }
  total *= 10;
  if (total == 0) return 10;
  if (!total.fits_ulong_p()) return static_cast<std::size_t>(-1);
  return static_cast<std::size_t>(total.get_ui());
}

SatResult integral_check_sat(IncrementalSolver& solver, const Model& model, IntegralityMode mode,
                             std::size_t max_rounds, CutStats& stats, std::vector<Disjunction>* added) {
  if (mode == IntegralityMode::kDisabled) return solver.check_sat();
  std::size_t cuts_here = 0;
  for (std::size_t round = 0;; ++round) {
    SatResult r = solver.check_sat();
    if (r.status != SatStatus::kSat) return r;
    if (!r.assignment) return SatResult::unknown("model values unparseable under cut mode");
    auto violated = violated_integrality(model, *r.assignment);
    if (violated.empty()) return r;
    if (round >= max_rounds) {
      return SatResult::unknown("cut rounds exceeded (" + std::to_string(max_rounds) + ")");
    }
    ++stats.repair_iterations;
    if (mode == IntegralityMode::kOneByOne) violated.resize(1);
    for (const auto& [x, v] : violated) {
      Disjunction cut = cut_for(x, v);
      solver.assert_formula(Formula::of(cut));
      if (added) added->push_back(std::move(cut));
      ++stats.cuts_added;
      ++cuts_here;
    }
    stats.max_cuts_per_check = std::max(stats.max_cuts_per_check, cuts_here);
  }
}

}  // namespace smtopt
