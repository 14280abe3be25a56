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


#include "smtopt/cr_opt.hpp"

#include <algorithm>
#include <chrono>
#include <utility>

#include "smtopt/error.hpp"

namespace smtopt {

std::string_view cr_method_name(CrMethod m) {
  switch (m) {
    case CrMethod::kNaive:
      return "naive";
    case CrMethod::kUbs:
      return "ubs";
    case CrMethod::kHybrid:
      return "hybrid";
  }
  return "?";
}

std::string_view outcome_kind_name(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::kOptimal:
      return "Optimal";
    case OutcomeKind::kInfeasible:
      return "Infeasible";
    case OutcomeKind::kUnknown:
      return "Unknown";
    case OutcomeKind::kBoundExceeded:
      return "BoundExceeded";
  }
  return "?";
}

SessionChecker::SessionChecker(IncrementalSolver& solver, const Model& model, IntegralityMode mode,
                               std::optional<std::size_t> max_cut_rounds)
    : solver_(solver),
      model_(model),
      mode_(mode),
      max_rounds_(max_cut_rounds.value_or(default_max_cut_rounds(model))),
      obj_(solver.declare("obj", Sort::kReal)) {
  Expr rhs = model.objective.constant == 0
                 ? model.objective.body
                 : Expr::sum({model.objective.body, Expr::constant(model.objective.constant)});
  solver_.assert_formula(Formula::of(Atom{Expr::var(obj_), Cmp::kEq, rhs}));
}

ProbeAnswer SessionChecker::check() {
  SatResult r = integral_check_sat(solver_, model_, mode_, max_rounds_, stats_, &level_cuts_.back());
  ProbeAnswer out{r.status, std::nullopt, std::nullopt, std::move(r.reason)};
  if (r.status == SatStatus::kSat && r.assignment && r.assignment->size() > obj_) {
    out.objective = (*r.assignment)[obj_];
    r.assignment->resize(model_.variables.size());
    out.witness = std::move(*r.assignment);
  }
  return out;
}

void SessionChecker::push() {
  solver_.push();
  level_cuts_.emplace_back();
}

void SessionChecker::pop() {
  if (level_cuts_.size() < 2) throw Error(ErrorCode::kPopOnEmptyStack, "checker pop at depth 0");
  std::vector<Disjunction> cuts = std::move(level_cuts_.back());
  level_cuts_.pop_back();
  solver_.pop();
  for (auto& c : cuts) {
    solver_.assert_formula(Formula::of(c));
    level_cuts_.back().push_back(std::move(c));
  }
}

void SessionChecker::bound_objective(const Rat& bound) {
  solver_.assert_formula(Formula::of(Atom{Expr::var(obj_), Cmp::kLe, Expr::constant(bound)}));
}

namespace {

// Shared bookkeeping of the three methods: the bracket, the best witness and
// probe instrumentation.
class Search {
 public:
  Search(FeasibilityChecker& fc, const CrOptions& opt) : fc_(fc), opt_(opt), start_(Clock::now()) {
    if (opt.eps <= 0) throw Error(ErrorCode::kInvalidArgument, "accuracy must be positive");
  }

  // Unretracted check.
  ProbeAnswer check(const char* phase, std::optional<Rat> bound) {
    ProbeAnswer a = fc_.check();
    after(a);
    record(phase, std::move(bound), a);
    return a;
  }

  // push; obj <= bound; check; pop. The pop is skipped on Unknown, which
  // ends the search anyway and may leave the solver unusable.
  ProbeAnswer probe(const char* phase, const Rat& bound) {
    fc_.push();
    fc_.bound_objective(bound);
    ProbeAnswer a = fc_.check();
    if (a.status != SatStatus::kUnknown) fc_.pop();
    if (a.status == SatStatus::kSat) {
      after(a, bound);
    } else if (a.status == SatStatus::kUnsat) {
      lo_ = bound;
    }
    record(phase, bound, a);
    return a;
  }

  // Sat without a probe bound: only a parseable objective helps.
  void after(const ProbeAnswer& a) {
    if (a.status == SatStatus::kSat && a.objective) take(*a.objective, a.witness);
  }
  // Sat of obj <= bound: f* <= bound even when the model is unreadable.
  void after(const ProbeAnswer& a, const Rat& bound) {
    if (a.objective) {
      take(*a.objective, a.witness);
    } else if (!hi_ || bound < *hi_) {
      hi_ = bound;
    }
  }

  void record(const char* phase, std::optional<Rat> bound, const ProbeAnswer& a) {
    ++probes_;
    if (!opt_.on_probe) return;
    ProbeRecord r;
    r.phase = phase;
    r.bound = std::move(bound);
    r.verdict = a.status;
    r.objective = a.objective;
    r.lo = lo_;
    r.hi = hi_;
    r.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
    opt_.on_probe(r);
  }

  OptOutcome optimal() const {
    OptOutcome o;
    o.kind = OutcomeKind::kOptimal;
    o.value = hi_;
    o.witness = witness_;
    o.bracket = Bracket{lo_, *hi_};
    return o;
  }

  OptOutcome give_up(OutcomeKind kind, std::string reason) const {
    OptOutcome o;
    o.kind = kind;
    o.value = hi_;
    o.witness = witness_;
    if (hi_) o.bracket = Bracket{lo_, *hi_};
    o.reason = std::move(reason);
    return o;
  }

  FeasibilityChecker& fc() { return fc_; }
  const Rat& eps() const { return opt_.eps; }
  const std::optional<Rat>& hi() const { return hi_; }
  const Bound& lo() const { return lo_; }
  void set_lo(Rat lo) { lo_ = std::move(lo); }
  std::size_t probes() const { return probes_; }

 private:
  void take(const Rat& v, const std::optional<Assignment>& w) {
    if (!hi_ || v <= *hi_) {
      hi_ = v;
      if (w) witness_ = *w;
    }
  }

  FeasibilityChecker& fc_;
  const CrOptions& opt_;
  Clock::time_point start_;
  Bound lo_;
  std::optional<Rat> hi_;
  std::optional<Assignment> witness_;
  std::size_t probes_ = 0;
};

OptOutcome binary_search(FeasibilityChecker& fc, const CrOptions& opt, bool hybrid) {
  Search s(fc, opt);
  const Rat& eps = s.eps();

  ProbeAnswer a = s.check("initial", std::nullopt);
  if (a.status == SatStatus::kUnsat) return OptOutcome::infeasible();
  if (a.status == SatStatus::kUnknown) return s.give_up(OutcomeKind::kUnknown, a.reason);
  if (!a.objective) return OptOutcome::unknown("initial model values unparseable");

  // Hybrid only: is there anything at least eps better than hi?
  auto emptiness = [&]() -> std::optional<OptOutcome> {
    ProbeAnswer e = s.probe("empty", *s.hi() - eps);
    if (e.status == SatStatus::kUnsat) return s.optimal();
    if (e.status == SatStatus::kUnknown) return s.give_up(OutcomeKind::kUnknown, e.reason);
    return std::nullopt;
  };
  if (hybrid) {
    if (auto done = emptiness()) return *done;
  }

  // bounds search
  Rat delta = std::max(eps, Rat(1));
  for (unsigned k = 0; !s.lo(); ++k) {
    if (k >= opt.doubling_cap) return s.give_up(OutcomeKind::kBoundExceeded, "below");
    a = s.probe("bounds", *s.hi() - delta);
    if (a.status == SatStatus::kUnknown) return s.give_up(OutcomeKind::kUnknown, a.reason);
    if (a.status == SatStatus::kSat) {
      delta *= 2;
      if (hybrid) {
        if (auto done = emptiness()) return *done;
      }
    }
  }

  // bisection
  while (*s.hi() - *s.lo() > eps) {
    Rat mid = (*s.lo() + *s.hi()) / 2;
    a = s.probe("bisect", mid);
    if (a.status == SatStatus::kUnknown) return s.give_up(OutcomeKind::kUnknown, a.reason);
    if (a.status == SatStatus::kSat && hybrid && *s.hi() - *s.lo() > eps) {
      if (auto done = emptiness()) return *done;
    }
  }
  return s.optimal();
}

}  // namespace

OptOutcome optimize_naive(FeasibilityChecker& fc, const CrOptions& opt) {
  Search s(fc, opt);
  const Rat& eps = s.eps();
  for (std::size_t it = 0;; ++it) {
    if (it >= opt.max_iters) return s.give_up(OutcomeKind::kUnknown, "iterations exceeded");
    std::optional<Rat> bound;
    if (s.hi()) bound = *s.hi() - eps;
    ProbeAnswer a = s.check("naive", bound);
    switch (a.status) {
      case SatStatus::kUnsat:
        if (!s.hi()) return OptOutcome::infeasible();
        s.set_lo(*s.hi() - eps);
        return s.optimal();
      case SatStatus::kUnknown:
        return s.give_up(OutcomeKind::kUnknown, a.reason);
      case SatStatus::kSat:
        if (!a.objective) return s.give_up(OutcomeKind::kUnknown, "naive requires model values");
        fc.bound_objective(*s.hi() - eps);
        break;
    }
  }
}

OptOutcome optimize_ubs(FeasibilityChecker& fc, const CrOptions& opt) { return binary_search(fc, opt, false); }

OptOutcome optimize_hybrid(FeasibilityChecker& fc, const CrOptions& opt) { return binary_search(fc, opt, true); }

OptOutcome optimize(CrMethod method, FeasibilityChecker& fc, const CrOptions& opt) {
  switch (method) {
    case CrMethod::kNaive:
      return optimize_naive(fc, opt);
    case CrMethod::kUbs:
      return optimize_ubs(fc, opt);
    case CrMethod::kHybrid:
      return optimize_hybrid(fc, opt);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown method");
}

}  // namespace smtopt
