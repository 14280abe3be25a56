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

// In-memory representation of mixed-integer nonlinear programs over exact
// rationals. Models, expressions and assignments are immutable once built and
// may be shared read-only between workers; transformations build new models.

#ifndef SMTOPT_MODEL_HPP_
#define SMTOPT_MODEL_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "smtopt/rational.hpp"

namespace smtopt {

using VarId = std::uint32_t;

// Dense assignment indexed by variable id.
using Assignment = std::vector<Rat>;

enum class Op { kConst, kVar, kSum, kNegate, kProduct, kSubtract, kDivide, kPower, kExp };

std::string_view op_name(Op op);

// Immutable expression tree with shared structure. Copies are cheap.
class Expr {
 public:
  // The constant 0.
  Expr();

  static Expr constant(Rat value);
  static Expr var(VarId id);
  // sum/product collapse: no children -> identity constant, one child -> child.
  static Expr sum(std::vector<Expr> children);
  static Expr product(std::vector<Expr> children);
  static Expr negate(Expr child);
  static Expr subtract(Expr a, Expr b);
  static Expr divide(Expr a, Expr b);
  static Expr power(Expr base, Expr exponent);
  static Expr exp(Expr child);

  Op op() const { return node_->op; }
  // Only meaningful for kConst.
  const Rat& value() const { return node_->value; }
  // Only meaningful for kVar.
  VarId var_id() const { return node_->var; }
  const std::vector<Expr>& children() const { return node_->children; }

  bool is_const() const { return op() == Op::kConst; }

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node {
    Op op;
    Rat value;
    VarId var = 0;
    std::vector<Expr> children;
  };
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Expr make(Op op, std::vector<Expr> children);

  std::shared_ptr<const Node> node_;
};

enum class VarKind { kContinuous, kInteger, kBinary };

struct Variable {
  VarId id = 0;
  std::string name;
  VarKind kind = VarKind::kContinuous;
  Bound lower;  // nullopt = -inf
  Bound upper;  // nullopt = +inf

  bool is_integer() const { return kind != VarKind::kContinuous; }
  friend bool operator==(const Variable&, const Variable&) = default;
};

enum class Origin { kParsed, kBinarization, kFlattening, kCut };

std::string_view origin_name(Origin origin);

// lower <= body <= upper, at least one side finite.
struct Constraint {
  Expr body;
  Bound lower;
  Bound upper;
  Origin origin = Origin::kParsed;
  std::string name;
  friend bool operator==(const Constraint&, const Constraint&) = default;
};

enum class Cmp { kLe, kGe, kEq };

struct Atom {
  Expr lhs;
  Cmp cmp;
  Expr rhs;
  friend bool operator==(const Atom&, const Atom&) = default;
};

// A disjunction of atoms. Flattening and cuts produce these.
struct Disjunction {
  std::vector<Atom> atoms;
  Origin origin = Origin::kFlattening;
  friend bool operator==(const Disjunction&, const Disjunction&) = default;
};

enum class Sense { kMinimize, kMaximize };

struct Objective {
  Sense sense = Sense::kMinimize;
  Expr body = Expr::constant(0);
  Rat constant = 0;
  friend bool operator==(const Objective&, const Objective&) = default;
};

struct Model {
  std::string name;
  std::vector<Variable> variables;
  std::vector<Constraint> constraints;
  std::vector<Disjunction> disjunctions;
  Objective objective;
  // Set by normalize_to_min when the original sense was Maximize; reported
  // optima must be negated back.
  bool objective_negated = false;

  VarId add_variable(std::string name, VarKind kind, Bound lower, Bound upper);
  std::optional<VarId> find_variable(std::string_view name) const;
  bool has_integer_variables() const;
  // Validates the structural invariants; throws Error(kInvalidArgument).
  void validate() const;

  friend bool operator==(const Model&, const Model&) = default;
};

enum class ProblemClass { kLP, kNLP, kILP, kINLP, kMILP, kMINLP, kBLP, kBNLP, kMBLP, kMBNLP };

std::string_view problem_class_name(ProblemClass c);

ProblemClass classify(const Model& model);

// Polynomial degree of the tree, or nullopt if it is not a polynomial
// (division by a non-constant, non-integer power, exp).
std::optional<int> polynomial_degree(const Expr& e);

Model normalize_to_min(Model model);

// Throws Error(kDivisionByZero) or Error(kNonRationalValue).
Rat eval(const Expr& expr, const Assignment& a);

bool holds(const Atom& atom, const Assignment& a, const Rat& tol = 0);

std::vector<std::pair<VarId, Rat>> violated_integrality(const Model& model, const Assignment& a);

bool check_feasible_point(const Model& model, const Assignment& a, const Rat& tol);

// Objective value including the constant term.
Rat eval_objective(const Model& model, const Assignment& a);

bool contains_exp(const Expr& e);
bool model_contains_exp(const Model& model);

}  // namespace smtopt

#endif  // SMTOPT_MODEL_HPP_
