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

#include "smtopt/model.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

#include "smtopt/error.hpp"

namespace smtopt {

std::string_view op_name(Op op) {
  switch (op) {
    case Op::kConst: return "const";
    case Op::kVar: return "var";
    case Op::kSum: return "sum";
    case Op::kNegate: return "negate";
    case Op::kProduct: return "product";
    case Op::kSubtract: return "subtract";
    case Op::kDivide: return "divide";
    case Op::kPower: return "power";
    case Op::kExp: return "exp";
  }
  return "?";
}

std::string_view origin_name(Origin origin) {
  switch (origin) {
    case Origin::kParsed: return "parsed";
    case Origin::kBinarization: return "binarization";
    case Origin::kFlattening: return "flattening";
    case Origin::kCut: return "cut";
  }
  return "?";
}

std::string_view problem_class_name(ProblemClass c) {
  switch (c) {
    case ProblemClass::kLP: return "LP";
    case ProblemClass::kNLP: return "NLP";
    case ProblemClass::kILP: return "ILP";
    case ProblemClass::kINLP: return "INLP";
    case ProblemClass::kMILP: return "MILP";
    case ProblemClass::kMINLP: return "MINLP";
    case ProblemClass::kBLP: return "BLP";
    case ProblemClass::kBNLP: return "BNLP";
    case ProblemClass::kMBLP: return "MBLP";
    case ProblemClass::kMBNLP: return "MBNLP";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Expr

Expr::Expr() : node_(constant(0).node_) {}

Expr Expr::make(Op op, std::vector<Expr> children) {
  auto node = std::make_shared<Node>();
  node->op = op;
  node->children = std::move(children);
  return Expr(std::move(node));
}

Expr Expr::constant(Rat value) {
  auto node = std::make_shared<Node>();
  node->op = Op::kConst;
  node->value = std::move(value);
  return Expr(std::move(node));
}

Expr Expr::var(VarId id) {
  auto node = std::make_shared<Node>();
  node->op = Op::kVar;
  node->var = id;
  return Expr(std::move(node));
}

Expr Expr::sum(std::vector<Expr> children) {
  if (children.empty()) return constant(0);
  if (children.size() == 1) return std::move(children.front());
  return make(Op::kSum, std::move(children));
}

Expr Expr::product(std::vector<Expr> children) {
  if (children.empty()) return constant(1);
  if (children.size() == 1) return std::move(children.front());
  return make(Op::kProduct, std::move(children));
}

Expr Expr::negate(Expr child) { return make(Op::kNegate, {std::move(child)}); }
Expr Expr::subtract(Expr a, Expr b) { return make(Op::kSubtract, {std::move(a), std::move(b)}); }
Expr Expr::divide(Expr a, Expr b) { return make(Op::kDivide, {std::move(a), std::move(b)}); }
Expr Expr::power(Expr base, Expr exponent) {
  return make(Op::kPower, {std::move(base), std::move(exponent)});
}
Expr Expr::exp(Expr child) { return make(Op::kExp, {std::move(child)}); }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case Op::kConst: return a.value() == b.value();
    case Op::kVar: return a.var_id() == b.var_id();
    default: return a.children() == b.children();
  }
}

// ---------------------------------------------------------------------------
// Model

VarId Model::add_variable(std::string var_name, VarKind kind, Bound lower, Bound upper) {
  auto id = static_cast<VarId>(variables.size());
  variables.push_back(Variable{id, std::move(var_name), kind, std::move(lower), std::move(upper)});
  return id;
}

std::optional<VarId> Model::find_variable(std::string_view var_name) const {
  for (const auto& v : variables) {
    if (v.name == var_name) return v.id;
  }
  return std::nullopt;
}

bool Model::has_integer_variables() const {
  return std::any_of(variables.begin(), variables.end(),
                     [](const Variable& v) { return v.is_integer(); });
}

namespace {

void check_tree(const Expr& e, size_t num_vars) {
  switch (e.op()) {
    case Op::kConst: return;
    case Op::kVar:
      if (e.var_id() >= num_vars) {
        throw Error(ErrorCode::kInvalidArgument, "variable id " + std::to_string(e.var_id()) + " out of range");
      }
      return;
    default:
      for (const auto& c : e.children()) check_tree(c, num_vars);
  }
}

}  // namespace

void Model::validate() const {
  std::unordered_set<std::string> names;
  for (size_t i = 0; i < variables.size(); ++i) {
    const auto& v = variables[i];
    if (v.id != i) throw Error(ErrorCode::kInvalidArgument, "variable ids must be dense");
    if (!names.insert(v.name).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate variable name '" + v.name + "'");
    }
    if (v.lower && v.upper && *v.lower > *v.upper) {
      throw Error(ErrorCode::kInvalidArgument, "variable '" + v.name + "' has lower > upper");
    }
    if (v.kind == VarKind::kBinary && !(v.lower == Rat(0) && v.upper == Rat(1))) {
      throw Error(ErrorCode::kInvalidArgument, "binary variable '" + v.name + "' must have bounds [0,1]");
    }
  }
  for (const auto& c : constraints) {
    if (!c.lower && !c.upper) {
      throw Error(ErrorCode::kInvalidArgument, "constraint '" + c.name + "' has no finite side");
    }
    check_tree(c.body, variables.size());
  }
  for (const auto& d : disjunctions) {
    for (const auto& a : d.atoms) {
      check_tree(a.lhs, variables.size());
      check_tree(a.rhs, variables.size());
    }
  }
  check_tree(objective.body, variables.size());
}

// ---------------------------------------------------------------------------
// Classification

std::optional<int> polynomial_degree(const Expr& e) {
  switch (e.op()) {
    case Op::kConst: return 0;
    case Op::kVar: return 1;
    case Op::kNegate: return polynomial_degree(e.children()[0]);
    case Op::kSum:
    case Op::kSubtract: {
      int d = 0;
      for (const auto& c : e.children()) {
        auto cd = polynomial_degree(c);
        if (!cd) return std::nullopt;
        d = std::max(d, *cd);
      }
      return d;
    }
    case Op::kProduct: {
      int d = 0;
      for (const auto& c : e.children()) {
        auto cd = polynomial_degree(c);
        if (!cd) return std::nullopt;
        d += *cd;
      }
      return d;
    }
    case Op::kDivide: {
      auto den = polynomial_degree(e.children()[1]);
      if (!den || *den != 0) return std::nullopt;
      return polynomial_degree(e.children()[0]);
    }
    case Op::kPower: {
      auto base = polynomial_degree(e.children()[0]);
      const auto& exponent = e.children()[1];
      if (!base) return std::nullopt;
      if (*base == 0) {
        // constant base: constant if the exponent is constant too
        auto ed = polynomial_degree(exponent);
        if (ed && *ed == 0) return 0;
        return std::nullopt;
      }
      if (!exponent.is_const() || !is_integral(exponent.value()) || exponent.value() < 0) return std::nullopt;
      if (exponent.value() > 1000) return std::nullopt;
      return *base * static_cast<int>(exponent.value().get_num().get_si());
    }
    case Op::kExp: {
      auto d = polynomial_degree(e.children()[0]);
      if (d && *d == 0) return 0;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

namespace {

bool is_linear(const Expr& e) {
  auto d = polynomial_degree(e);
  return d && *d <= 1;
}

}  // namespace

ProblemClass classify(const Model& model) {
  bool linear = is_linear(model.objective.body);
  for (const auto& c : model.constraints) linear = linear && is_linear(c.body);
  for (const auto& d : model.disjunctions) {
    for (const auto& a : d.atoms) linear = linear && is_linear(a.lhs) && is_linear(a.rhs);
  }

  size_t n_cont = 0;
  size_t n_int = 0;
  size_t n_bin = 0;
  for (const auto& v : model.variables) {
    switch (v.kind) {
      case VarKind::kContinuous: ++n_cont; break;
      case VarKind::kInteger: ++n_int; break;
      case VarKind::kBinary: ++n_bin; break;
    }
  }
  if (n_int + n_bin == 0) return linear ? ProblemClass::kLP : ProblemClass::kNLP;
  bool binary_only = n_int == 0;
  if (n_cont == 0) {
    if (binary_only) return linear ? ProblemClass::kBLP : ProblemClass::kBNLP;
    return linear ? ProblemClass::kILP : ProblemClass::kINLP;
  }
  if (binary_only) return linear ? ProblemClass::kMBLP : ProblemClass::kMBNLP;
  return linear ? ProblemClass::kMILP : ProblemClass::kMINLP;
}

Model normalize_to_min(Model model) {
  if (model.objective.sense == Sense::kMaximize) {
    model.objective.sense = Sense::kMinimize;
    model.objective.body = Expr::negate(model.objective.body);
    model.objective.constant = -model.objective.constant;
    model.objective_negated = !model.objective_negated;
  }
  return model;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

Rat rat_pow(const Rat& base, const Rat& exponent) {
  if (!is_integral(exponent)) {
    throw Error(ErrorCode::kNonRationalValue, "power with non-integer exponent " + to_string(exponent));
  }
  const mpz_class& k = exponent.get_num();
  if (!k.fits_slong_p()) throw Error(ErrorCode::kNonRationalValue, "exponent too large");
  long kk = k.get_si();
  if (kk < 0 && base == 0) throw Error(ErrorCode::kDivisionByZero, "0 raised to negative power");
  unsigned long abs_k = static_cast<unsigned long>(kk < 0 ? -kk : kk);
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), abs_k);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), abs_k);
  Rat r = kk < 0 ? Rat(den, num) : Rat(num, den);
  r.canonicalize();
  return r;
}

}  // namespace

Rat eval(const Expr& expr, const Assignment& a) {
  switch (expr.op()) {
    case Op::kConst: return expr.value();
    case Op::kVar:
      if (expr.var_id() >= a.size()) {
        throw Error(ErrorCode::kInvalidArgument, "assignment missing variable " + std::to_string(expr.var_id()));
      }
      return a[expr.var_id()];
    case Op::kSum: {
      Rat s = 0;
      for (const auto& c : expr.children()) s += eval(c, a);
      return s;
    }
    case Op::kNegate: return -eval(expr.children()[0], a);
    case Op::kProduct: {
      Rat p = 1;
      for (const auto& c : expr.children()) p *= eval(c, a);
      return p;
    }
    case Op::kSubtract: return eval(expr.children()[0], a) - eval(expr.children()[1], a);
    case Op::kDivide: {
      Rat den = eval(expr.children()[1], a);
      if (den == 0) throw Error(ErrorCode::kDivisionByZero, "division by zero");
      Rat q = eval(expr.children()[0], a) / den;
      return q;
    }
    case Op::kPower: return rat_pow(eval(expr.children()[0], a), eval(expr.children()[1], a));
    case Op::kExp: throw Error(ErrorCode::kNonRationalValue, "exp has no exact rational value");
  }
  throw Error(ErrorCode::kInvalidArgument, "bad expression node");
}

bool holds(const Atom& atom, const Assignment& a, const Rat& tol) {
  Rat diff = eval(atom.lhs, a) - eval(atom.rhs, a);
  switch (atom.cmp) {
    case Cmp::kLe: return diff <= tol;
    case Cmp::kGe: return diff >= -tol;
    case Cmp::kEq: return abs(diff) <= tol;
  }
  return false;
}

std::vector<std::pair<VarId, Rat>> violated_integrality(const Model& model, const Assignment& a) {
  std::vector<std::pair<VarId, Rat>> out;
  for (const auto& v : model.variables) {
    if (!v.is_integer()) continue;
    if (v.id >= a.size()) {
      throw Error(ErrorCode::kInvalidArgument, "assignment missing variable '" + v.name + "'");
    }
    if (!is_integral(a[v.id])) out.emplace_back(v.id, a[v.id]);
  }
  return out;
}

bool check_feasible_point(const Model& model, const Assignment& a, const Rat& tol) {
  if (!violated_integrality(model, a).empty()) return false;
  for (const auto& v : model.variables) {
    const Rat& x = a[v.id];
    if (v.lower && x < *v.lower - tol) return false;
    if (v.upper && x > *v.upper + tol) return false;
  }
  for (const auto& c : model.constraints) {
    Rat value = eval(c.body, a);
    if (c.lower && value < *c.lower - tol) return false;
    if (c.upper && value > *c.upper + tol) return false;
  }
  for (const auto& d : model.disjunctions) {
    bool any = std::any_of(d.atoms.begin(), d.atoms.end(),
                           [&](const Atom& atom) { return holds(atom, a, tol); });
    if (!any) return false;
  }
  return true;
}

Rat eval_objective(const Model& model, const Assignment& a) {
  return eval(model.objective.body, a) + model.objective.constant;
}

bool contains_exp(const Expr& e) {
  if (e.op() == Op::kExp) return true;
  return std::any_of(e.children().begin(), e.children().end(),
                     [](const Expr& c) { return contains_exp(c); });
}

bool model_contains_exp(const Model& model) {
  if (contains_exp(model.objective.body)) return true;
  for (const auto& c : model.constraints) {
    if (contains_exp(c.body)) return true;
  }
  for (const auto& d : model.disjunctions) {
    for (const auto& a : d.atoms) {
      if (contains_exp(a.lhs) || contains_exp(a.rhs)) return true;
    }
  }
  return false;
}

}  // namespace smtopt
