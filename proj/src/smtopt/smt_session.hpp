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

// Feasibility checking through an external SMT-LIB 2.0 solver. A session owns
// one solver process, speaks to it over pipes with :print-success enabled and
// mirrors its assertion stack depth.

#ifndef SMTOPT_SMT_SESSION_HPP_
#define SMTOPT_SMT_SESSION_HPP_

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "smtopt/model.hpp"
#include "smtopt/process.hpp"

namespace smtopt {

struct SolverConfig {
  std::string command;
  std::vector<std::string> args;
  // nullopt = Auto: "ALL" if the solver accepts it, else QF_NIRA / QF_NRA.
  std::optional<std::string> logic;
  std::optional<std::chrono::milliseconds> per_check_timeout;
  bool use_native_power = false;
  unsigned power_unroll_cap = 32;

  // Interactive-mode preset for Z3 ("-in").
  static SolverConfig z3(std::string command = "z3");
  friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

// Boolean combination of atoms, as sent in (assert ...).
struct Formula {
  enum class Kind { kAtom, kAnd, kOr };
  Kind kind = Kind::kAtom;
  std::optional<Atom> atom;
  std::vector<Formula> children;

  static Formula of(Atom a);
  static Formula all_of(std::vector<Formula> parts);
  static Formula any_of(std::vector<Formula> parts);
  static Formula of(const Disjunction& d);
  friend bool operator==(const Formula&, const Formula&) = default;
};

enum class Sort { kReal, kInt };

// Turns expressions and formulas into SMT-LIB text for a fixed symbol table.
class SmtEmitter {
 public:
  SmtEmitter(bool use_native_power = false, unsigned power_unroll_cap = 32)
      : native_power_(use_native_power), unroll_cap_(power_unroll_cap) {}

  // Registers a variable; returns its SMT symbol.
  const std::string& declare(VarId id, std::string_view name, Sort sort);

  const std::string& symbol(VarId id) const;
  Sort sort(VarId id) const { return sorts_.at(id); }
  size_t size() const { return symbols_.size(); }

  std::string term(const Expr& e) const;
  std::string formula(const Formula& f) const;
  // One "(assert ...)" line per top-level conjunct.
  std::vector<std::string> assert_commands(const Formula& f) const;

  static std::string literal(const Rat& r);

 private:
  void term_into(std::string& out, const Expr& e) const;

  bool native_power_;
  unsigned unroll_cap_;
  std::vector<std::string> symbols_;
  std::vector<Sort> sorts_;
  std::unordered_set<std::string> taken_;
};

enum class SatStatus { kSat, kUnsat, kUnknown };

struct SatResult {
  SatStatus status = SatStatus::kUnknown;
  // For kSat: the model, or nullopt when some value could not be read as a
  // rational (e.g. algebraic numbers).
  std::optional<Assignment> assignment;
  std::string reason;  // kUnknown only

  static SatResult sat(std::optional<Assignment> a) { return {SatStatus::kSat, std::move(a), {}}; }
  static SatResult unsat() { return {SatStatus::kUnsat, std::nullopt, {}}; }
  static SatResult unknown(std::string why) { return {SatStatus::kUnknown, std::nullopt, std::move(why)}; }
};

// Parses a model value as printed by get-value: integers, decimals,
// (/ p q), (- v), (to_real n) and nestings thereof.
std::optional<Rat> parse_smt_value(std::string_view text);

// The incremental solver operations the optimization layers rely on.
// SmtSession is the production implementation; tests substitute scripted
// ones.
class IncrementalSolver {
 public:
  virtual ~IncrementalSolver() = default;
  // Declares an extra Real/Int variable; ids continue after the model's.
  virtual VarId declare(std::string_view name, Sort sort) = 0;
  virtual void assert_formula(const Formula& f) = 0;
  virtual void push() = 0;
  virtual void pop() = 0;
  virtual SatResult check_sat() = 0;
};

class SmtSession : public IncrementalSolver {
 public:
  // Starts the solver, performs the handshake, declares every model variable
  // (Int iff integer_sorts and the variable is integer-kinded) and asserts
  // bounds, constraints and disjunctions.
  static SmtSession open(const SolverConfig& config, const Model& model, bool integer_sorts,
                         CancelToken cancel = {}, bool keep_transcript = false);

  SmtSession(SmtSession&&) noexcept;
  SmtSession& operator=(SmtSession&&) noexcept;
  ~SmtSession() override;

  VarId declare(std::string_view name, Sort sort) override;

  std::string emit(const Expr& e) const { return emitter_.term(e); }
  void assert_formula(const Formula& f) override;
  void push() override;
  void pop() override;
  SatResult check_sat() override;
  void close();

  size_t depth() const { return depth_; }
  bool alive() const;
  size_t num_checks() const { return num_checks_; }
  const SmtEmitter& emitter() const { return emitter_; }
  // Every command sent so far, when opened with keep_transcript.
  const std::vector<std::string>& transcript() const { return transcript_; }

 private:
  SmtSession(SolverConfig config, CancelToken cancel, bool keep_transcript);

  void send(const std::string& command);
  // Sends a command and expects "success".
  void command(const std::string& command);
  std::string read_response(std::optional<Clock::time_point> local_deadline = std::nullopt);
  std::string reason_unknown();

  SolverConfig config_;
  CancelToken cancel_;
  std::unique_ptr<ChildProcess> process_;
  SmtEmitter emitter_;
  size_t depth_ = 0;
  size_t num_checks_ = 0;
  bool keep_transcript_ = false;
  std::vector<std::string> transcript_;
};

}  // namespace smtopt

#endif  // SMTOPT_SMT_SESSION_HPP_
