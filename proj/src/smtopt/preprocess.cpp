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


#include "smtopt/preprocess.hpp"

#include <string>
#include <unordered_set>

#include "smtopt/error.hpp"

namespace smtopt {

namespace {

// Integer range [ceil(lo), floor(hi)] of an integer-kinded variable.
std::pair<Rat, Rat> integer_range(const Variable& v) {
  if (!v.lower || !v.upper) throw Error(ErrorCode::kUnboundedInteger, v.name);
  Rat l = rat_ceil(*v.lower);
  Rat u = rat_floor(*v.upper);
  if (u < l) throw Error(ErrorCode::kEmptyIntegerRange, v.name);
  return {l, u};
}

Atom var_atom(VarId x, Cmp cmp, const Rat& k) { return Atom{Expr::var(x), cmp, Expr::constant(k)}; }

class NameSet {
 public:
  explicit NameSet(const Model& m) {
    for (const auto& v : m.variables) names_.insert(v.name);
  }
  std::string fresh(const std::string& base) {
    std::string name = base;
    for (int k = 1; names_.count(name); ++k) name = base + "_" + std::to_string(k);
    names_.insert(name);
    return name;
  }

 private:
  std::unordered_set<std::string> names_;
};

}  // namespace

unsigned bit_count(const Rat& width) {
  if (width <= 0) return 0;
  mpz_class w = rat_ceil(width).get_num();
  if (w == 1) return 1;
  mpz_class m = w - 1;
  return 1 + static_cast<unsigned>(mpz_sizeinbase(m.get_mpz_t(), 2));
}

std::pair<Model, BinMap> binarize(Model model) {
  BinMap map;
  NameSet names(model);
  const size_t original = model.variables.size();
  for (size_t i = 0; i < original; ++i) {
    if (model.variables[i].kind != VarKind::kInteger) continue;
    auto [l, u] = integer_range(model.variables[i]);
    const VarId x = model.variables[i].id;
    const std::string base = model.variables[i].name;
    model.variables[i].kind = VarKind::kContinuous;
    model.variables[i].lower = l;
    model.variables[i].upper = u;

    BinEntry entry{x, l, {}};
    if (u == l) {
      model.constraints.push_back(Constraint{Expr::var(x), l, l, Origin::kBinarization, base + "_fix"});
      map.push_back(std::move(entry));
      continue;
    }
    const unsigned q = bit_count(u - l);
    std::vector<Expr> terms{Expr::var(x)};
    for (unsigned b = 1; b <= q; ++b) {
      VarId id = model.add_variable(names.fresh(base + "_b" + std::to_string(b)), VarKind::kInteger, Rat(0), Rat(1));
      entry.bits.push_back(id);
      Expr bit = Expr::var(id);
      terms.push_back(Expr::negate(b == 1 ? bit : Expr::product({Expr::constant(pow2(b - 1)), bit})));
    }
    // x - sum 2^(i-1) b_i = l
    model.constraints.push_back(Constraint{Expr::sum(std::move(terms)), l, l, Origin::kBinarization, base + "_bin"});
    map.push_back(std::move(entry));
  }
  return {std::move(model), std::move(map)};
}

Model flatten_binarized(Model model) {
  for (const auto& v : model.variables) {
    if (v.is_integer() && !(v.lower && v.upper && *v.lower == 0 && *v.upper == 1)) {
      throw Error(ErrorCode::kNotBinarized, v.name);
    }
  }
  for (auto& v : model.variables) {
    if (!v.is_integer()) continue;
    model.disjunctions.push_back(
        Disjunction{{var_atom(v.id, Cmp::kEq, 0), var_atom(v.id, Cmp::kEq, 1)}, Origin::kFlattening});
    v.kind = VarKind::kContinuous;
  }
  return model;
}

Model flatten_naive(Model model, unsigned cap) {
  for (const auto& v : model.variables) {
    if (!v.is_integer()) continue;
    auto [l, u] = integer_range(v);
    if (u - l > cap) {
      throw Error(ErrorCode::kRangeTooWide,
                  v.name + ": width " + to_string(u - l) + " exceeds cap " + std::to_string(cap));
    }
  }
  for (auto& v : model.variables) {
    if (!v.is_integer()) continue;
    auto [l, u] = integer_range(v);
    model.constraints.push_back(Constraint{Expr::var(v.id), l, u, Origin::kFlattening, v.name + "_range"});
    for (Rat i = l; i <= u; i += 1) {
      model.disjunctions.push_back(
          Disjunction{{var_atom(v.id, Cmp::kLe, i), var_atom(v.id, Cmp::kGe, i + 1)}, Origin::kFlattening});
    }
    v.kind = VarKind::kContinuous;
  }
  return model;
}

}  // namespace smtopt
