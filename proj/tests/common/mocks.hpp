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


// In-process stand-ins for the solver layers.

#ifndef SMTOPT_TESTS_MOCKS_HPP_
#define SMTOPT_TESTS_MOCKS_HPP_

#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "smtopt/cr_opt.hpp"
#include "smtopt/smt_session.hpp"

namespace smtopt::testing {

// Replays queued check results and records every assertion.
class ScriptedSolver : public IncrementalSolver {
 public:
  explicit ScriptedSolver(size_t num_vars) : next_id_(static_cast<VarId>(num_vars)) {}

  void enqueue(SatResult r) { script_.push_back(std::move(r)); }

  VarId declare(std::string_view, Sort) override { return next_id_++; }
  void assert_formula(const Formula& f) override { asserted.push_back(f); }
  void push() override { ++depth; }
  void pop() override { --depth; }
  SatResult check_sat() override {
    ++checks;
    if (script_.empty()) return SatResult::unknown("script exhausted");
    SatResult r = std::move(script_.front());
    script_.pop_front();
    return r;
  }

  std::vector<Formula> asserted;
  int depth = 0;
  int checks = 0;

 private:
  VarId next_id_;
  std::deque<SatResult> script_;
};

// Feasible objective values are a union of closed intervals; an interval with
// no lower end extends to -inf. A check answers with the largest feasible
// value under every active bound, which is the least helpful choice for the
// search.
class IntervalChecker : public FeasibilityChecker {
 public:
  struct Piece {
    std::optional<Rat> lo;
    Rat hi;
  };

  explicit IntervalChecker(std::vector<Piece> pieces) : pieces_(std::move(pieces)) { frames_.push_back({}); }

  ProbeAnswer check() override {
    ++checks;
    if (unknown_after && checks > *unknown_after) return {SatStatus::kUnknown, {}, {}, "scripted"};
    std::optional<Rat> cap;
    for (const auto& f : frames_) {
      for (const auto& b : f) {
        if (!cap || b < *cap) cap = b;
      }
    }
    std::optional<Rat> best;
    for (const auto& p : pieces_) {
      Rat v = p.hi;
      if (cap && *cap < v) {
        if (p.lo && *cap < *p.lo) continue;
        v = *cap;
      }
      if (!best || v > *best) best = v;
    }
    if (!best) return {SatStatus::kUnsat, {}, {}, {}};
    ProbeAnswer a{SatStatus::kSat, best, Assignment{*best}, {}};
    if (hide_values) {
      a.objective.reset();
      a.witness.reset();
    }
    return a;
  }
  void push() override { frames_.push_back({}); }
  void pop() override { frames_.pop_back(); }
  void bound_objective(const Rat& bound) override { frames_.back().push_back(bound); }

  int checks = 0;
  std::optional<int> unknown_after;
  bool hide_values = false;

 private:
  std::vector<Piece> pieces_;
  std::vector<std::vector<Rat>> frames_;
};

}  // namespace smtopt::testing

#endif  // SMTOPT_TESTS_MOCKS_HPP_
