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

// Continuous relaxation optimization: drives objective-bound probes to an
// absolute accuracy eps with the naive descent, unbounded binary search, or
// the hybrid of the two.

#ifndef SMTOPT_CR_OPT_HPP_
#define SMTOPT_CR_OPT_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "smtopt/integrality.hpp"
#include "smtopt/model.hpp"
#include "smtopt/smt_session.hpp"

namespace smtopt {

enum class CrMethod { kNaive, kUbs, kHybrid };

std::string_view cr_method_name(CrMethod m);

// lo: nullopt until some probe obj <= lo came back Unsat.
// hi: objective value of a feasible point.
struct Bracket {
  Bound lo;
  Rat hi;
  friend bool operator==(const Bracket&, const Bracket&) = default;
};

enum class OutcomeKind { kOptimal, kInfeasible, kUnknown, kBoundExceeded };

std::string_view outcome_kind_name(OutcomeKind k);

struct OptOutcome {
  OutcomeKind kind = OutcomeKind::kUnknown;
  // Optimal: the value. Unknown/BoundExceeded: best value seen, if any.
  std::optional<Rat> value;
  std::optional<Assignment> witness;
  std::optional<Bracket> bracket;
  // Unknown: why. BoundExceeded: direction ("below").
  std::string reason;

  static OptOutcome infeasible() { return {OutcomeKind::kInfeasible, {}, {}, {}, {}}; }
  static OptOutcome unknown(std::string why) { return {OutcomeKind::kUnknown, {}, {}, {}, std::move(why)}; }
  bool definitive() const { return kind == OutcomeKind::kOptimal || kind == OutcomeKind::kInfeasible; }
  friend bool operator==(const OptOutcome&, const OptOutcome&) = default;
};

// Answer to one feasibility probe.
struct ProbeAnswer {
  SatStatus status = SatStatus::kUnknown;
  // Sat only; nullopt when the solver's model could not be read.
  std::optional<Rat> objective;
  std::optional<Assignment> witness;
  std::string reason;
};

// What the optimization methods need from the feasibility layer: checks,
// a retractable assertion stack and objective upper bounds.
class FeasibilityChecker {
 public:
  virtual ~FeasibilityChecker() = default;
  virtual ProbeAnswer check() = 0;
  virtual void push() = 0;
  virtual void pop() = 0;
  // Asserts obj <= bound at the current stack level.
  virtual void bound_objective(const Rat& bound) = 0;
};

// Checker backed by an incremental solver that already holds the model. Adds
// a fresh variable obj with obj = objective body + constant and routes every
// check through integral_check_sat. Cuts outlive the probe scope they were
// found in: pop() re-asserts them one level down.
class SessionChecker : public FeasibilityChecker {
 public:
  SessionChecker(IncrementalSolver& solver, const Model& model, IntegralityMode mode,
                 std::optional<std::size_t> max_cut_rounds = std::nullopt);

  ProbeAnswer check() override;
  void push() override;
  void pop() override;
  void bound_objective(const Rat& bound) override;

  const CutStats& cut_stats() const { return stats_; }
  VarId objective_id() const { return obj_; }

 private:
  IncrementalSolver& solver_;
  const Model& model_;
  IntegralityMode mode_;
  std::size_t max_rounds_;
  VarId obj_;
  CutStats stats_;
  // Cuts asserted at each open stack level, outermost first.
  std::vector<std::vector<Disjunction>> level_cuts_{1};
};

// One probe as seen by the instrumentation hook. lo/hi are the bracket
// after the probe's verdict has been applied.
struct ProbeRecord {
  std::string phase;  // initial, naive, bounds, bisect, empty
  std::optional<Rat> bound;
  SatStatus verdict = SatStatus::kUnknown;
  std::optional<Rat> objective;
  Bound lo;
  std::optional<Rat> hi;
  double elapsed_ms = 0;
};

using ProbeHook = std::function<void(const ProbeRecord&)>;

struct CrOptions {
  Rat eps{1, 1000};
  std::size_t max_iters = 100000;    // naive
  unsigned doubling_cap = 64;        // ubs / hybrid
  ProbeHook on_probe;
};

OptOutcome optimize_naive(FeasibilityChecker& fc, const CrOptions& opt);
OptOutcome optimize_ubs(FeasibilityChecker& fc, const CrOptions& opt);
OptOutcome optimize_hybrid(FeasibilityChecker& fc, const CrOptions& opt);

OptOutcome optimize(CrMethod method, FeasibilityChecker& fc, const CrOptions& opt);

}  // namespace smtopt

#endif  // SMTOPT_CR_OPT_HPP_
