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


#include "random_minlp.hpp"

#include <string>
#include <vector>

namespace smtopt::testing {

namespace {

// c * x_i * x_j (j may equal i), or c * x_i when j is empty.
struct Term {
  Rat c;
  VarId i;
  std::optional<VarId> j;
};

Expr to_expr(const std::vector<Term>& terms) {
  std::vector<Expr> parts;
  for (const auto& t : terms) {
    std::vector<Expr> f{Expr::constant(t.c), Expr::var(t.i)};
    if (t.j) f.push_back(Expr::var(*t.j));
    parts.push_back(Expr::product(std::move(f)));
  }
  return Expr::sum(std::move(parts));
}

Rat max_abs(const Variable& v) { return std::max(abs(*v.lower), abs(*v.upper)); }

// |p(x + d) - p(x)| <= sum |c| (|x_i| d_j + |x_j| d_i + d_i d_j)
Rat slack(const std::vector<Term>& terms, const Model& m, const Rat& half) {
  auto delta = [&](VarId id) { return m.variables[id].is_integer() ? Rat(0) : half; };
  Rat s = 0;
  for (const auto& t : terms) {
    if (!t.j) {
      s += abs(t.c) * delta(t.i);
    } else {
      const auto& a = m.variables[t.i];
      const auto& b = m.variables[*t.j];
      s += abs(t.c) * (max_abs(a) * delta(*t.j) + max_abs(b) * delta(t.i) + delta(t.i) * delta(*t.j));
    }
  }
  return s;
}

Rat eval_terms(const std::vector<Term>& terms, const Assignment& a) {
  Rat s = 0;
  for (const auto& t : terms) s += t.c * a[t.i] * (t.j ? a[*t.j] : Rat(1));
  return s;
}

}  // namespace

RandomInstance random_minlp(std::mt19937& rng, const RandomShape& shape, const Rat& grid) {
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto coin = [&](double p) { return std::bernoulli_distribution(p)(rng); };

  Model m;
  const int n_int = uni(1, shape.max_ints);
  const int n_cont = uni(0, shape.max_conts);
  Assignment planted;
  for (int i = 0; i < n_int; ++i) {
    int w = uni(0, shape.max_width);
    int l = uni(-4, 4);
    VarKind kind = (w == 1 && l == 0 && coin(0.5)) ? VarKind::kBinary : VarKind::kInteger;
    m.add_variable("n" + std::to_string(i), kind, Rat(l), Rat(l + w));
    planted.push_back(Rat(uni(l, l + w)));
  }
  // grid points of the continuous ranges
  const long steps = Rat(Rat(2) / grid).get_num().get_si();
  for (int i = 0; i < n_cont; ++i) {
    int a = uni(-2, 1);
    m.add_variable("c" + std::to_string(i), VarKind::kContinuous, Rat(a), Rat(a + 2));
    planted.push_back(Rat(a) + grid * static_cast<long>(std::uniform_int_distribution<long>(0, steps)(rng)));
  }
  const auto n = static_cast<VarId>(m.variables.size());
  auto any_var = [&] { return static_cast<VarId>(uni(0, static_cast<int>(n) - 1)); };
  auto coef = [&] {
    Rat c(uni(-6, 6), 2);
    c.canonicalize();
    return c == 0 ? Rat(1) : c;
  };

  std::vector<Term> obj;
  for (VarId i = 0; i < n; ++i) {
    if (coin(0.8)) obj.push_back({coef(), i, std::nullopt});
  }
  for (int k = uni(0, 2); k > 0; --k) obj.push_back({coef(), any_var(), any_var()});
  if (obj.empty()) obj.push_back({Rat(1), 0, std::nullopt});
  m.objective.body = to_expr(obj);

  const Rat half = grid / 2;
  RandomInstance out;
  out.objective_slack = slack(obj, m, half);
  out.constraint_slack = 0;

  for (int r = uni(1, 2); r > 0; --r) {
    std::vector<Term> row;
    for (VarId i = 0; i < n; ++i) {
      if (coin(0.6)) row.push_back({coef(), i, std::nullopt});
    }
    if (coin(0.4)) row.push_back({coef(), any_var(), any_var()});
    if (row.empty()) row.push_back({Rat(1), any_var(), std::nullopt});
    Rat at = eval_terms(row, planted);
    Constraint c;
    c.name = "r" + std::to_string(m.constraints.size());
    c.body = to_expr(row);
    // planted point satisfies the row, sometimes tightly
    Rat pad(uni(0, 2), 2);
    pad.canonicalize();
    if (coin(0.5)) {
      c.upper = at + pad;
    } else {
      c.lower = at - pad;
    }
    out.constraint_slack = std::max(out.constraint_slack, slack(row, m, half));
    m.constraints.push_back(std::move(c));
  }

  // 2 x in [2k + 1/2, 2k + 3/2]: x = k + 1/2 in the relaxation, no integer
  const auto& x0 = m.variables[0];
  if (coin(shape.infeasible_rate) && *x0.upper - *x0.lower >= 1) {
    Rat k = *x0.lower;
    Constraint c;
    c.name = "odd";
    c.body = Expr::product({Expr::constant(2), Expr::var(0)});
    c.lower = 2 * k + Rat(1, 2);
    c.upper = 2 * k + Rat(3, 2);
    m.constraints.push_back(std::move(c));
  }

  m.validate();
  out.model = std::move(m);
  return out;
}

Rat integer_width_sum(const Model& model) {
  Rat s = 0;
  for (const auto& v : model.variables) {
    if (v.is_integer() && v.lower && v.upper) s += rat_floor(*v.upper) - rat_ceil(*v.lower);
  }
  return s;
}

}  // namespace smtopt::testing
