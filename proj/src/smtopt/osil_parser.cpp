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

#include "smtopt/osil_parser.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "smtopt/error.hpp"

namespace smtopt {

namespace {

namespace pt = boost::property_tree;

bool is_meta(const std::string& tag) { return tag == "<xmlattr>" || tag == "<xmlcomment>"; }

std::optional<std::string> attr(const pt::ptree& node, const std::string& name) {
  auto attrs = node.get_child_optional("<xmlattr>");
  if (!attrs) return std::nullopt;
  auto v = attrs->get_optional<std::string>(pt::ptree::path_type(name, '\0'));
  if (!v) return std::nullopt;
  return *v;
}

long attr_long(const pt::ptree& node, const std::string& name, long fallback) {
  auto v = attr(node, name);
  if (!v) return fallback;
  try {
    size_t used = 0;
    long out = std::stol(*v, &used);
    if (used != v->size()) throw std::invalid_argument(*v);
    return out;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kMalformedDocument, "attribute " + name + "='" + *v + "' is not an integer");
  }
}

Rat to_rat(const std::string& text, const std::string& what) {
  auto r = try_parse_rat(text);
  if (!r) throw Error(ErrorCode::kMalformedDocument, what + ": bad number '" + text + "'");
  return *r;
}

// "INF"/"-INF"/"Infinity" etc. map to nullopt.
Bound to_bound(const std::string& text, const std::string& what) {
  std::string t;
  for (char c : text) t += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (t == "inf" || t == "-inf" || t == "+inf" || t == "infinity" || t == "-infinity" || t == "+infinity") {
    return std::nullopt;
  }
  return to_rat(text, what);
}

std::vector<std::pair<std::string, const pt::ptree*>> children(const pt::ptree& node) {
  std::vector<std::pair<std::string, const pt::ptree*>> out;
  for (const auto& [tag, child] : node) {
    if (!is_meta(tag)) out.emplace_back(tag, &child);
  }
  return out;
}

// Expands an array of <el> items honoring the mult/incr compression.
std::vector<long> read_int_array(const pt::ptree& node, const std::string& what) {
  std::vector<long> out;
  for (const auto& [tag, el] : children(node)) {
    if (tag != "el") throw Error(ErrorCode::kMalformedDocument, what + ": unexpected <" + tag + ">");
    long mult = attr_long(*el, "mult", 1);
    long incr = attr_long(*el, "incr", 0);
    long v = 0;
    try {
      v = std::stol(el->data());
    } catch (const std::exception&) {
      throw Error(ErrorCode::kMalformedDocument, what + ": bad integer '" + el->data() + "'");
    }
    for (long k = 0; k < mult; ++k) out.push_back(v + k * incr);
  }
  return out;
}

std::vector<Rat> read_rat_array(const pt::ptree& node, const std::string& what) {
  std::vector<Rat> out;
  for (const auto& [tag, el] : children(node)) {
    if (tag != "el") throw Error(ErrorCode::kMalformedDocument, what + ": unexpected <" + tag + ">");
    long mult = attr_long(*el, "mult", 1);
    Rat v = to_rat(el->data(), what);
    for (long k = 0; k < mult; ++k) out.push_back(v);
  }
  return out;
}

Expr scaled_var(const Rat& coef, VarId id) {
  if (coef == 1) return Expr::var(id);
  return Expr::product({Expr::constant(coef), Expr::var(id)});
}

class NonlinearReader {
 public:
  explicit NonlinearReader(size_t num_vars) : num_vars_(num_vars) {}

  Expr read(const std::string& tag, const pt::ptree& node) const {
    auto kids = children(node);
    auto arity = [&](size_t n) {
      if (kids.size() != n) {
        throw Error(ErrorCode::kMalformedDocument,
                    "<" + tag + "> expects " + std::to_string(n) + " operand(s), got " + std::to_string(kids.size()));
      }
    };
    auto sub = [&](size_t i) { return read(kids[i].first, *kids[i].second); };

    if (tag == "number") {
      arity(0);
      auto v = attr(node, "value");
      return Expr::constant(v ? to_rat(*v, "<number>") : Rat(0));
    }
    if (tag == "variable") {
      arity(0);
      long idx = attr_long(node, "idx", -1);
      if (idx < 0 || static_cast<size_t>(idx) >= num_vars_) {
        throw Error(ErrorCode::kMalformedDocument, "<variable> idx out of range");
      }
      auto coef = attr(node, "coef");
      return scaled_var(coef ? to_rat(*coef, "<variable coef>") : Rat(1), static_cast<VarId>(idx));
    }
    if (tag == "plus") { arity(2); return flat_sum({sub(0), sub(1)}); }
    if (tag == "sum") {
      std::vector<Expr> parts;
      for (size_t i = 0; i < kids.size(); ++i) parts.push_back(sub(i));
      return flat_sum(std::move(parts));
    }
    if (tag == "minus") { arity(2); return Expr::subtract(sub(0), sub(1)); }
    if (tag == "negate") { arity(1); return Expr::negate(sub(0)); }
    if (tag == "times") { arity(2); return flat_product({sub(0), sub(1)}); }
    if (tag == "product") {
      std::vector<Expr> parts;
      for (size_t i = 0; i < kids.size(); ++i) parts.push_back(sub(i));
      return flat_product(std::move(parts));
    }
    if (tag == "divide") { arity(2); return Expr::divide(sub(0), sub(1)); }
    if (tag == "power") { arity(2); return Expr::power(sub(0), sub(1)); }
    if (tag == "square") { arity(1); return Expr::power(sub(0), Expr::constant(2)); }
    if (tag == "exp") { arity(1); return Expr::exp(sub(0)); }
    throw Error(ErrorCode::kUnsupportedOperator, tag);
  }

 private:
  static Expr flat_sum(std::vector<Expr> parts) {
    std::vector<Expr> out;
    for (auto& p : parts) {
      if (p.op() == Op::kSum) {
        out.insert(out.end(), p.children().begin(), p.children().end());
      } else {
        out.push_back(std::move(p));
      }
    }
    return Expr::sum(std::move(out));
  }

  static Expr flat_product(std::vector<Expr> parts) {
    std::vector<Expr> out;
    for (auto& p : parts) {
      if (p.op() == Op::kProduct) {
        out.insert(out.end(), p.children().begin(), p.children().end());
      } else {
        out.push_back(std::move(p));
      }
    }
    return Expr::product(std::move(out));
  }

  size_t num_vars_;
};

const pt::ptree& find_instance_data(const pt::ptree& doc) {
  for (const auto& [tag, root] : doc) {
    if (is_meta(tag)) continue;
    if (tag != "osil") throw Error(ErrorCode::kMalformedDocument, "root element is <" + tag + ">, expected <osil>");
    auto data = root.get_child_optional("instanceData");
    if (!data) throw Error(ErrorCode::kMalformedDocument, "missing <instanceData>");
    return *data;
  }
  throw Error(ErrorCode::kMalformedDocument, "empty document");
}

void read_variables(const pt::ptree& data, const OsilOptions& options, Model& model) {
  auto vars = data.get_child_optional("variables");
  if (!vars) return;
  long declared = attr_long(*vars, "numberOfVariables", -1);
  std::unordered_set<std::string> names;
  for (const auto& [tag, v] : children(*vars)) {
    if (tag != "var") throw Error(ErrorCode::kMalformedDocument, "<variables>: unexpected <" + tag + ">");
    long mult = attr_long(*v, "mult", 1);
    for (long k = 0; k < mult; ++k) {
      std::string name = attr(*v, "name").value_or("");
      if (name.empty() || mult > 1) name = "_x" + std::to_string(model.variables.size());
      while (!names.insert(name).second) name += "_";

      std::string type = attr(*v, "type").value_or("C");
      Bound lb = options.free_default_lower_bound ? Bound{} : Bound{Rat(0)};
      Bound ub;
      if (auto s = attr(*v, "lb")) lb = to_bound(*s, "var lb");
      if (auto s = attr(*v, "ub")) ub = to_bound(*s, "var ub");

      VarKind kind = VarKind::kContinuous;
      if (type == "C") {
        kind = VarKind::kContinuous;
      } else if (type == "I") {
        kind = VarKind::kInteger;
      } else if (type == "B") {
        if (!attr(*v, "ub")) ub = Rat(1);
        if (!lb || *lb < 0) lb = Rat(0);
        if (!ub || *ub > 1) ub = Rat(1);
        kind = (lb == Rat(0) && ub == Rat(1)) ? VarKind::kBinary : VarKind::kInteger;
      } else {
        throw Error(ErrorCode::kMalformedDocument, "unsupported variable type '" + type + "'");
      }
      model.add_variable(name, kind, lb, ub);
    }
  }
  if (declared >= 0 && static_cast<size_t>(declared) != model.variables.size()) {
    throw Error(ErrorCode::kInconsistentCounts, "numberOfVariables=" + std::to_string(declared) + " but " +
                                                    std::to_string(model.variables.size()) + " <var> elements");
  }
}

struct RowParts {
  std::vector<Expr> terms;
};

}  // namespace

Model parse_osil(std::string_view xml, const OsilOptions& options) {
  pt::ptree doc;
  try {
    std::istringstream in{std::string(xml)};
    pt::read_xml(in, doc, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error& e) {
    throw Error(ErrorCode::kMalformedDocument, e.what());
  }
  const pt::ptree& data = find_instance_data(doc);

  Model model;
  read_variables(data, options, model);
  const size_t n = model.variables.size();
  auto check_var = [&](long idx, const std::string& what) {
    if (idx < 0 || static_cast<size_t>(idx) >= n) {
      throw Error(ErrorCode::kMalformedDocument, what + ": variable index " + std::to_string(idx) + " out of range");
    }
    return static_cast<VarId>(idx);
  };

  // objective
  RowParts objective_parts;
  if (auto objs = data.get_child_optional("objectives")) {
    long declared = attr_long(*objs, "numberOfObjectives", -1);
    auto list = children(*objs);
    if (list.size() > 1 || declared > 1) throw Error(ErrorCode::kMultipleObjectives, std::to_string(list.size()));
    if (declared >= 0 && static_cast<size_t>(declared) != list.size()) {
      throw Error(ErrorCode::kInconsistentCounts, "numberOfObjectives");
    }
    if (!list.empty()) {
      const auto& [tag, obj] = list.front();
      if (tag != "obj") throw Error(ErrorCode::kMalformedDocument, "<objectives>: unexpected <" + tag + ">");
      if (attr_long(*obj, "mult", 1) != 1) throw Error(ErrorCode::kMultipleObjectives, "mult");
      std::string sense = attr(*obj, "maxOrMin").value_or("min");
      if (sense == "max") {
        model.objective.sense = Sense::kMaximize;
      } else if (sense == "min") {
        model.objective.sense = Sense::kMinimize;
      } else {
        throw Error(ErrorCode::kMalformedDocument, "maxOrMin='" + sense + "'");
      }
      if (auto c = attr(*obj, "constant")) model.objective.constant = to_rat(*c, "obj constant");
      long declared_coefs = attr_long(*obj, "numberOfObjCoef", -1);
      long coefs = 0;
      for (const auto& [ctag, coef] : children(*obj)) {
        if (ctag != "coef") throw Error(ErrorCode::kMalformedDocument, "<obj>: unexpected <" + ctag + ">");
        VarId id = check_var(attr_long(*coef, "idx", -1), "objective coef");
        objective_parts.terms.push_back(scaled_var(to_rat(coef->data(), "objective coef"), id));
        ++coefs;
      }
      if (declared_coefs >= 0 && declared_coefs != coefs) {
        throw Error(ErrorCode::kInconsistentCounts, "numberOfObjCoef");
      }
    }
  }

  // constraint rows
  struct Row {
    std::string name;
    Bound lower;
    Bound upper;
    Rat constant = 0;
  };
  std::vector<Row> rows;
  if (auto cons = data.get_child_optional("constraints")) {
    long declared = attr_long(*cons, "numberOfConstraints", -1);
    for (const auto& [tag, con] : children(*cons)) {
      if (tag != "con") throw Error(ErrorCode::kMalformedDocument, "<constraints>: unexpected <" + tag + ">");
      long mult = attr_long(*con, "mult", 1);
      for (long k = 0; k < mult; ++k) {
        Row row;
        row.name = attr(*con, "name").value_or("");
        if (row.name.empty() || mult > 1) row.name = "_c" + std::to_string(rows.size());
        if (auto s = attr(*con, "lb")) row.lower = to_bound(*s, "con lb");
        if (auto s = attr(*con, "ub")) row.upper = to_bound(*s, "con ub");
        if (auto s = attr(*con, "constant")) row.constant = to_rat(*s, "con constant");
        rows.push_back(std::move(row));
      }
    }
    if (declared >= 0 && static_cast<size_t>(declared) != rows.size()) {
      throw Error(ErrorCode::kInconsistentCounts, "numberOfConstraints");
    }
  }
  std::vector<RowParts> row_parts(rows.size());
  auto check_row = [&](long idx, const std::string& what) -> RowParts& {
    if (idx == -1) return objective_parts;
    if (idx < 0 || static_cast<size_t>(idx) >= rows.size()) {
      throw Error(ErrorCode::kMalformedDocument, what + ": row index " + std::to_string(idx) + " out of range");
    }
    return row_parts[static_cast<size_t>(idx)];
  };

  // linear part
  if (auto lin = data.get_child_optional("linearConstraintCoefficients")) {
    long declared = attr_long(*lin, "numberOfValues", -1);
    auto start_node = lin->get_child_optional("start");
    auto row_idx = lin->get_child_optional("rowIdx");
    auto col_idx = lin->get_child_optional("colIdx");
    auto values_node = lin->get_child_optional("value");
    if (!start_node || !values_node || (!row_idx == !col_idx)) {
      throw Error(ErrorCode::kMalformedDocument,
                  "<linearConstraintCoefficients> needs <start>, <value> and exactly one of <rowIdx>/<colIdx>");
    }
    bool column_major = static_cast<bool>(row_idx);
    auto start = read_int_array(*start_node, "start");
    auto index = read_int_array(column_major ? *row_idx : *col_idx, column_major ? "rowIdx" : "colIdx");
    auto values = read_rat_array(*values_node, "value");
    if (index.size() != values.size() || (declared >= 0 && static_cast<size_t>(declared) != values.size())) {
      throw Error(ErrorCode::kInconsistentCounts, "numberOfValues / index / value lengths differ");
    }
    size_t majors = column_major ? n : rows.size();
    if (start.size() < majors || start.size() > majors + 1) {
      throw Error(ErrorCode::kInconsistentCounts, "<start> has " + std::to_string(start.size()) + " entries");
    }
    if (start.size() == majors) start.push_back(static_cast<long>(values.size()));
    for (size_t major = 0; major < majors; ++major) {
      long begin = start[major];
      long end = start[major + 1];
      if (begin < 0 || end < begin || static_cast<size_t>(end) > values.size()) {
        throw Error(ErrorCode::kInconsistentCounts, "<start> is not monotone within bounds");
      }
      for (long k = begin; k < end; ++k) {
        long minor = index[static_cast<size_t>(k)];
        long r = column_major ? minor : static_cast<long>(major);
        long c = column_major ? static_cast<long>(major) : minor;
        if (r < 0) throw Error(ErrorCode::kMalformedDocument, "negative row index in linear matrix");
        check_row(r, "linear matrix")
            .terms.push_back(scaled_var(values[static_cast<size_t>(k)], check_var(c, "linear matrix")));
      }
    }
  }

  // quadratic part
  if (auto quad = data.get_child_optional("quadraticCoefficients")) {
    long declared = attr_long(*quad, "numberOfQuadraticTerms", -1);
    long count = 0;
    for (const auto& [tag, q] : children(*quad)) {
      if (tag != "qTerm") throw Error(ErrorCode::kMalformedDocument, "<quadraticCoefficients>: unexpected <" + tag + ">");
      long idx = attr_long(*q, "idx", -2);
      VarId a = check_var(attr_long(*q, "idxOne", -1), "qTerm idxOne");
      VarId b = check_var(attr_long(*q, "idxTwo", -1), "qTerm idxTwo");
      Rat coef = 1;
      if (auto s = attr(*q, "coef")) coef = to_rat(*s, "qTerm coef");
      Expr monomial = a == b ? Expr::power(Expr::var(a), Expr::constant(2))
                             : Expr::product({Expr::var(a), Expr::var(b)});
      if (coef != 1) monomial = Expr::product({Expr::constant(coef), monomial});
      check_row(idx, "qTerm").terms.push_back(monomial);
      ++count;
    }
    if (declared >= 0 && declared != count) throw Error(ErrorCode::kInconsistentCounts, "numberOfQuadraticTerms");
  }

  // nonlinear part
  if (auto nls = data.get_child_optional("nonlinearExpressions")) {
    long declared = attr_long(*nls, "numberOfNonlinearExpressions", -1);
    long count = 0;
    NonlinearReader reader(n);
    for (const auto& [tag, nl] : children(*nls)) {
      if (tag != "nl") throw Error(ErrorCode::kMalformedDocument, "<nonlinearExpressions>: unexpected <" + tag + ">");
      long idx = attr_long(*nl, "idx", -2);
      auto kids = children(*nl);
      if (kids.size() != 1) throw Error(ErrorCode::kMalformedDocument, "<nl> must have exactly one root node");
      check_row(idx, "nl").terms.push_back(reader.read(kids[0].first, *kids[0].second));
      ++count;
    }
    if (declared >= 0 && declared != count) {
      throw Error(ErrorCode::kInconsistentCounts, "numberOfNonlinearExpressions");
    }
  }

  model.objective.body = Expr::sum(std::move(objective_parts.terms));
  for (size_t i = 0; i < rows.size(); ++i) {
    auto& row = rows[i];
    if (!row.lower && !row.upper) continue;  // free row, no restriction
    auto terms = std::move(row_parts[i].terms);
    if (row.constant != 0) terms.push_back(Expr::constant(row.constant));
    model.constraints.push_back(
        Constraint{Expr::sum(std::move(terms)), row.lower, row.upper, Origin::kParsed, row.name});
  }
  model.validate();
  return model;
}

ClassDetection detect_class_and_vector_set(const Model& model) {
  return ClassDetection{classify(model), model.has_integer_variables() ? VectorSetHint::kMinlpVectors
                                                                        : VectorSetHint::kNlpVectors};
}

}  // namespace smtopt
