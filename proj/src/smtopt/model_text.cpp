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

#include "smtopt/model_text.hpp"

#include <cctype>
#include <iomanip>
#include <sstream>
#include <vector>

#include "smtopt/error.hpp"

namespace smtopt {

namespace {

void write_expr(std::ostream& os, const Expr& e) {
  switch (e.op()) {
    case Op::kConst: os << to_string(e.value()); return;
    case Op::kVar: os << '#' << e.var_id(); return;
    default: break;
  }
  const char* head = "";
  switch (e.op()) {
    case Op::kSum: head = "+"; break;
    case Op::kNegate: head = "neg"; break;
    case Op::kProduct: head = "*"; break;
    case Op::kSubtract: head = "-"; break;
    case Op::kDivide: head = "/"; break;
    case Op::kPower: head = "^"; break;
    case Op::kExp: head = "exp"; break;
    default: break;
  }
  os << '(' << head;
  for (const auto& c : e.children()) {
    os << ' ';
    write_expr(os, c);
  }
  os << ')';
}

void write_bound(std::ostream& os, const Bound& b, const char* inf) {
  if (b) {
    os << to_string(*b);
  } else {
    os << inf;
  }
}

const char* cmp_text(Cmp c) {
  switch (c) {
    case Cmp::kLe: return "<=";
    case Cmp::kGe: return ">=";
    case Cmp::kEq: return "=";
  }
  return "?";
}

Origin parse_origin(const std::string& s) {
  for (Origin o : {Origin::kParsed, Origin::kBinarization, Origin::kFlattening, Origin::kCut}) {
    if (origin_name(o) == s) return o;
  }
  throw Error(ErrorCode::kMalformedDocument, "unknown origin '" + s + "'");
}

// Token stream over one line. Quoted strings keep their quotes so callers
// can tell names from atoms.
class Tokens {
 public:
  explicit Tokens(std::string_view line) {
    size_t i = 0;
    while (i < line.size()) {
      char c = line[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else if (c == '(' || c == ')') {
        tokens_.emplace_back(1, c);
        ++i;
      } else if (c == '"') {
        std::istringstream is{std::string(line.substr(i))};
        std::string s;
        is >> std::quoted(s);
        if (!is) throw Error(ErrorCode::kMalformedDocument, "unterminated string");
        tokens_.push_back("\"" + s);
        auto consumed = is.eof() ? line.size() - i : static_cast<size_t>(is.tellg());
        i += consumed;
      } else {
        size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '(' &&
               line[j] != ')') {
          ++j;
        }
        tokens_.emplace_back(line.substr(i, j - i));
        i = j;
      }
    }
  }

  bool done() const { return pos_ >= tokens_.size(); }
  const std::string& peek() const {
    if (done()) throw Error(ErrorCode::kMalformedDocument, "unexpected end of line");
    return tokens_[pos_];
  }
  std::string next() {
    std::string t = peek();
    ++pos_;
    return t;
  }
  std::string next_name() {
    std::string t = next();
    if (t.empty() || t[0] != '"') throw Error(ErrorCode::kMalformedDocument, "expected quoted name");
    return t.substr(1);
  }
  void expect(std::string_view t) {
    if (next() != t) throw Error(ErrorCode::kMalformedDocument, "expected '" + std::string(t) + "'");
  }

 private:
  std::vector<std::string> tokens_;
  size_t pos_ = 0;
};

Expr read_expr(Tokens& tk) {
  std::string t = tk.next();
  if (t == "(") {
    std::string head = tk.next();
    std::vector<Expr> kids;
    while (tk.peek() != ")") kids.push_back(read_expr(tk));
    tk.expect(")");
    auto arity = [&](size_t n) {
      if (kids.size() != n) throw Error(ErrorCode::kMalformedDocument, "bad arity for '" + head + "'");
    };
    if (head == "+") {
      if (kids.size() < 2) throw Error(ErrorCode::kMalformedDocument, "sum needs 2 children");
      return Expr::sum(std::move(kids));
    }
    if (head == "*") {
      if (kids.size() < 2) throw Error(ErrorCode::kMalformedDocument, "product needs 2 children");
      return Expr::product(std::move(kids));
    }
    if (head == "neg") { arity(1); return Expr::negate(kids[0]); }
    if (head == "-") { arity(2); return Expr::subtract(kids[0], kids[1]); }
    if (head == "/") { arity(2); return Expr::divide(kids[0], kids[1]); }
    if (head == "^") { arity(2); return Expr::power(kids[0], kids[1]); }
    if (head == "exp") { arity(1); return Expr::exp(kids[0]); }
    throw Error(ErrorCode::kMalformedDocument, "unknown operator '" + head + "'");
  }
  if (!t.empty() && t[0] == '#') {
    return Expr::var(static_cast<VarId>(std::stoul(t.substr(1))));
  }
  return Expr::constant(parse_rat(t));
}

Bound read_bound(Tokens& tk) {
  std::string t = tk.next();
  if (t == "-inf" || t == "inf") return std::nullopt;
  return parse_rat(t);
}

}  // namespace

std::string expr_to_text(const Expr& e) {
  std::ostringstream os;
  write_expr(os, e);
  return os.str();
}

std::string model_to_text(const Model& model) {
  std::ostringstream os;
  os << "model " << std::quoted(model.name) << " negated=" << (model.objective_negated ? 1 : 0) << '\n';
  for (const auto& v : model.variables) {
    char kind = v.kind == VarKind::kContinuous ? 'C' : v.kind == VarKind::kInteger ? 'I' : 'B';
    os << "var " << std::quoted(v.name) << ' ' << kind << ' ';
    write_bound(os, v.lower, "-inf");
    os << ' ';
    write_bound(os, v.upper, "inf");
    os << '\n';
  }
  os << "obj " << (model.objective.sense == Sense::kMinimize ? "min" : "max") << ' '
     << to_string(model.objective.constant) << ' ';
  write_expr(os, model.objective.body);
  os << '\n';
  for (const auto& c : model.constraints) {
    os << "con " << std::quoted(c.name) << ' ' << origin_name(c.origin) << ' ';
    write_bound(os, c.lower, "-inf");
    os << ' ';
    write_bound(os, c.upper, "inf");
    os << ' ';
    write_expr(os, c.body);
    os << '\n';
  }
  for (const auto& d : model.disjunctions) {
    os << "dis " << origin_name(d.origin);
    for (const auto& a : d.atoms) {
      os << " (" << cmp_text(a.cmp) << ' ';
      write_expr(os, a.lhs);
      os << ' ';
      write_expr(os, a.rhs);
      os << ')';
    }
    os << '\n';
  }
  return os.str();
}

Model model_from_text(std::string_view text) {
  Model model;
  size_t start = 0;
  while (start < text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    Tokens tk(line);
    if (tk.done()) continue;
    std::string kw = tk.next();
    if (kw == "model") {
      model.name = tk.next_name();
      std::string flag = tk.next();
      model.objective_negated = flag == "negated=1";
    } else if (kw == "var") {
      std::string name = tk.next_name();
      std::string kind = tk.next();
      VarKind k = kind == "C"   ? VarKind::kContinuous
                  : kind == "I" ? VarKind::kInteger
                  : kind == "B" ? VarKind::kBinary
                                : throw Error(ErrorCode::kMalformedDocument, "bad kind '" + kind + "'");
      Bound lb = read_bound(tk);
      Bound ub = read_bound(tk);
      model.add_variable(std::move(name), k, std::move(lb), std::move(ub));
    } else if (kw == "obj") {
      std::string sense = tk.next();
      model.objective.sense = sense == "max" ? Sense::kMaximize : Sense::kMinimize;
      model.objective.constant = parse_rat(tk.next());
      model.objective.body = read_expr(tk);
    } else if (kw == "con") {
      Constraint c;
      c.name = tk.next_name();
      c.origin = parse_origin(tk.next());
      c.lower = read_bound(tk);
      c.upper = read_bound(tk);
      c.body = read_expr(tk);
      model.constraints.push_back(std::move(c));
    } else if (kw == "dis") {
      Disjunction d;
      d.origin = parse_origin(tk.next());
      while (!tk.done()) {
        tk.expect("(");
        std::string cmp = tk.next();
        Cmp c = cmp == "<=" ? Cmp::kLe : cmp == ">=" ? Cmp::kGe : Cmp::kEq;
        Expr lhs = read_expr(tk);
        Expr rhs = read_expr(tk);
        tk.expect(")");
        d.atoms.push_back(Atom{lhs, c, rhs});
      }
      model.disjunctions.push_back(std::move(d));
    } else {
      throw Error(ErrorCode::kMalformedDocument, "unknown record '" + kw + "'");
    }
    if (!tk.done()) throw Error(ErrorCode::kMalformedDocument, "trailing tokens after '" + kw + "'");
  }
  model.validate();
  return model;
}

}  // namespace smtopt
