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


#include "smtopt/oracle.hpp"

#include <string>
#include <vector>

#include "smtopt/error.hpp"

namespace smtopt {

namespace {

constexpr unsigned long kMaxIntegerPoints = 1000000;
constexpr unsigned long kMaxGridSteps = 10000;
constexpr unsigned long kMaxTotalPoints = 50000000;

struct Axis {
  VarId id;
  Rat lo;
  Rat step;
  unsigned long count;  // number of points
};

}  // namespace

OracleResult brute_force(const Model& model, const OracleOptions& opt) {
  if (opt.grid <= 0) throw Error(ErrorCode::kInvalidArgument, "grid step must be positive");
  if (model_contains_exp(model)) throw Error(ErrorCode::kInvalidArgument, "exp has no exact value");

  std::vector<Axis> axes;
  mpz_class total = 1;
  mpz_class integer_points = 1;
  size_t continuous = 0;
  for (const auto& v : model.variables) {
    if (!v.lower || !v.upper) throw Error(ErrorCode::kUnboundedVariable, v.name);
    Axis a{v.id, *v.lower, 1, 1};
    mpz_class count;
    if (v.is_integer()) {
      a.lo = rat_ceil(*v.lower);
      Rat hi = rat_floor(*v.upper);
      count = hi < a.lo ? mpz_class(0) : mpz_class(Rat(hi - a.lo).get_num() + 1);
      integer_points *= count;
    } else {
      ++continuous;
      a.step = opt.grid;
      count = rat_floor((*v.upper - *v.lower) / opt.grid).get_num() + 1;
      if (count > kMaxGridSteps + 1) {
        throw Error(ErrorCode::kTooLarge, v.name + ": more than " + std::to_string(kMaxGridSteps) + " grid steps");
      }
    }
    total *= count;
    a.count = count.get_ui();
    axes.push_back(a);
  }
  if (continuous > 2) throw Error(ErrorCode::kTooLarge, "more than 2 continuous variables");
  if (integer_points > kMaxIntegerPoints) throw Error(ErrorCode::kTooLarge, "integer range product above 1e6");
  if (total > kMaxTotalPoints) throw Error(ErrorCode::kTooLarge, "grid has " + total.get_str() + " points");

  OracleResult result;
  result.tolerance = opt.grid * opt.lipschitz;
  result.outcome = OptOutcome::infeasible();
  if (total == 0) return result;

  const bool maximize = model.objective.sense == Sense::kMaximize;
  std::vector<unsigned long> index(axes.size(), 0);
  Assignment a(model.variables.size());
  std::optional<Rat> best;
  for (;;) {
    for (size_t i = 0; i < axes.size(); ++i) a[axes[i].id] = axes[i].lo + axes[i].step * Rat(index[i]);
    ++result.points;
    bool ok = false;
    try {
      ok = check_feasible_point(model, a, result.tolerance);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDivisionByZero) throw;
    }
    if (ok) {
      Rat f = eval_objective(model, a);
      if (!best || (maximize ? f > *best : f < *best)) {
        best = f;
        result.outcome.witness = a;
      }
    }
    size_t k = 0;
    while (k < axes.size() && ++index[k] == axes[k].count) index[k++] = 0;
    if (k == axes.size()) break;
  }
  if (best) {
    result.outcome.kind = OutcomeKind::kOptimal;
    result.outcome.value = best;
  }
  return result;
}

}  // namespace smtopt
