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

#include "smtopt/mps_parser.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "smtopt/error.hpp"

namespace smtopt {

namespace {

enum class Section { kNone, kName, kObjSense, kRows, kColumns, kRhs, kRanges, kBounds, kEnd };

enum class RowType { kN, kL, kG, kE };

struct Row {
  std::string name;
  RowType type;
  std::vector<Expr> terms;
  Rat rhs = 0;
  std::optional<Rat> range;
};

struct Column {
  VarId id;
};

std::vector<std::string> split_free(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream is{std::string(line)};
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::string trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Fixed MPS columns (1-based): 2-3, 5-12, 15-22, 25-36, 40-47, 50-61.
std::vector<std::string> split_fixed(std::string_view line) {
  static constexpr std::pair<size_t, size_t> kFields[] = {{1, 2}, {4, 8}, {14, 8}, {24, 12}, {39, 8}, {49, 12}};
  std::vector<std::string> out;
  for (auto [start, len] : kFields) {
    if (start >= line.size()) break;
    out.push_back(trim(line.substr(start, len)));
  }
  // drop trailing empties, keep interior positions
  while (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

class MpsReader {
 public:
  Model read(std::string_view text) {
    size_t start = 0;
    while (start <= text.size()) {
      size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(start, end - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      ++line_no_;
      process(line);
      if (end == text.size() || section_ == Section::kEnd) break;
      start = end + 1;
    }
    return finish();
  }

 private:
  [[noreturn]] void malformed(const std::string& what) const {
    throw Error(ErrorCode::kMalformedField, "line " + std::to_string(line_no_) + ": " + what);
  }

  Rat number(const std::string& s) const {
    auto r = try_parse_rat(s);
    if (!r) malformed("bad number '" + s + "'");
    return *r;
  }

  Row& row(const std::string& name) {
    auto it = row_index_.find(name);
    if (it == row_index_.end()) {
      throw Error(ErrorCode::kUnknownRowReference, "line " + std::to_string(line_no_) + ": row '" + name + "'");
    }
    return rows_[it->second];
  }

  VarId column(const std::string& name) {
    auto it = col_index_.find(name);
    if (it == col_index_.end()) malformed("unknown column '" + name + "'");
    return it->second;
  }

  void process(std::string_view line) {
    if (line.empty() || line.front() == '*') return;
    if (trim(line).empty()) return;
    if (!std::isspace(static_cast<unsigned char>(line.front()))) {
      header(line);
      return;
    }
    auto fields = split_free(line);
    switch (section_) {
      case Section::kObjSense: objsense(fields); break;
      case Section::kRows: rows(fields, line); break;
      case Section::kColumns: columns(fields, line); break;
      case Section::kRhs: rhs_or_range(fields, line, /*range=*/false); break;
      case Section::kRanges: rhs_or_range(fields, line, /*range=*/true); break;
      case Section::kBounds: bounds(fields, line); break;
      case Section::kNone:
      case Section::kName:
      case Section::kEnd: malformed("data line outside of a section");
    }
  }

  void header(std::string_view line) {
    auto fields = split_free(line);
    const std::string& kw = fields[0];
    if (kw == "NAME") {
      section_ = Section::kName;
      if (fields.size() > 1) model_.name = fields[1];
    } else if (kw == "OBJSENSE") {
      section_ = Section::kObjSense;
      if (fields.size() > 1) objsense({fields.begin() + 1, fields.end()});
    } else if (kw == "ROWS") {
      section_ = Section::kRows;
    } else if (kw == "COLUMNS") {
      section_ = Section::kColumns;
    } else if (kw == "RHS") {
      section_ = Section::kRhs;
    } else if (kw == "RANGES") {
      section_ = Section::kRanges;
    } else if (kw == "BOUNDS") {
      section_ = Section::kBounds;
    } else if (kw == "ENDATA") {
      section_ = Section::kEnd;
    } else {
      throw Error(ErrorCode::kUnknownSection, "line " + std::to_string(line_no_) + ": '" + kw + "'");
    }
  }

  void objsense(const std::vector<std::string>& fields) {
    if (fields.size() != 1) malformed("OBJSENSE expects one field");
    const auto& s = fields[0];
    if (s == "MIN" || s == "MINIMIZE") {
      model_.objective.sense = Sense::kMinimize;
    } else if (s == "MAX" || s == "MAXIMIZE") {
      model_.objective.sense = Sense::kMaximize;
    } else {
      malformed("unknown OBJSENSE '" + s + "'");
    }
  }

  void rows(std::vector<std::string> fields, std::string_view line) {
    if (fields.size() != 2) fields = split_fixed(line);
    if (fields.size() != 3 && fields.size() != 2) malformed("ROWS entry needs type and name");
    if (fields.size() == 3) fields.erase(fields.begin() + 1);  // fixed layout leaves an empty field 2
    RowType type;
    const auto& t = fields[0];
    if (t == "N") {
      type = RowType::kN;
    } else if (t == "L") {
      type = RowType::kL;
    } else if (t == "G") {
      type = RowType::kG;
    } else if (t == "E") {
      type = RowType::kE;
    } else {
      malformed("unknown row type '" + t + "'");
    }
    const auto& name = fields[1];
    if (row_index_.count(name)) throw Error(ErrorCode::kDuplicateRow, name);
    if (type == RowType::kN) {
      if (objective_row_) {
        // additional free rows carry no restriction
        row_index_.emplace(name, rows_.size());
        rows_.push_back(Row{name, type, {}, 0, std::nullopt});
        ignored_rows_.push_back(rows_.size() - 1);
        return;
      }
      objective_row_ = rows_.size();
    }
    row_index_.emplace(name, rows_.size());
    rows_.push_back(Row{name, type, {}, 0, std::nullopt});
  }

  void columns(std::vector<std::string> fields, std::string_view line) {
    if (fields.size() >= 3 && fields[1] == "'MARKER'") {
      const auto& what = fields[2];
      if (what == "'INTORG'") {
        in_integer_block_ = true;
      } else if (what == "'INTEND'") {
        in_integer_block_ = false;
      } else {
        malformed("unknown marker " + what);
      }
      return;
    }
    if (fields.size() != 3 && fields.size() != 5) fields = split_fixed(line);
    if (!fields.empty() && fields[0].empty()) fields.erase(fields.begin());
    if (fields.size() != 3 && fields.size() != 5) malformed("COLUMNS entry needs column and 1 or 2 (row, value) pairs");
    const auto& col_name = fields[0];
    auto it = col_index_.find(col_name);
    VarId id;
    if (it == col_index_.end()) {
      id = model_.add_variable(col_name, in_integer_block_ ? VarKind::kInteger : VarKind::kContinuous, Rat(0),
                               std::nullopt);
      col_index_.emplace(col_name, id);
    } else {
      id = it->second;
    }
    for (size_t k = 1; k + 1 < fields.size(); k += 2) {
      Rat v = number(fields[k + 1]);
      Expr term = v == 1 ? Expr::var(id) : Expr::product({Expr::constant(v), Expr::var(id)});
      row(fields[k]).terms.push_back(term);
    }
  }

  void rhs_or_range(std::vector<std::string> fields, std::string_view line, bool range) {
    // An odd field count means the leading set name is present.
    if (fields.size() < 2 || fields.size() > 5) fields = split_fixed(line);
    if (!fields.empty() && fields[0].empty()) fields.erase(fields.begin());
    size_t offset = fields.size() & 1;
    if (fields.size() < 2 + offset) malformed(range ? "RANGES entry too short" : "RHS entry too short");
    for (size_t k = offset; k + 1 < fields.size(); k += 2) {
      Row& r = row(fields[k]);
      Rat v = number(fields[k + 1]);
      if (range) {
        r.range = v;
      } else {
        r.rhs = v;
      }
    }
  }

  void bounds(std::vector<std::string> fields, std::string_view line) {
    if (fields.size() < 2 || fields.size() > 4) fields = split_fixed(line);
    if (fields.size() < 2) malformed("BOUNDS entry too short");
    const std::string type = fields[0];
    bool needs_value = type == "UP" || type == "LO" || type == "FX" || type == "UI" || type == "LI";
    std::string col_name;
    std::optional<Rat> value;
    if (needs_value) {
      if (fields.size() == 4) {
        col_name = fields[2];
        value = number(fields[3]);
      } else if (fields.size() == 3) {
        col_name = fields[1];
        value = number(fields[2]);
      } else {
        malformed("bound " + type + " needs a value");
      }
    } else {
      if (fields.size() == 4) {
        col_name = fields[2];  // e.g. "BV BND x 1"
      } else if (fields.size() == 3) {
        col_name = fields[2];
      } else {
        col_name = fields[1];
      }
    }
    Variable& v = model_.variables[column(col_name)];
    auto& lower_touched = lower_set_[v.id];
    if (type == "UP") {
      v.upper = *value;
      if (*value < 0 && !lower_touched && v.lower == Rat(0)) v.lower.reset();
    } else if (type == "LO") {
      v.lower = *value;
      lower_touched = true;
    } else if (type == "FX") {
      v.lower = *value;
      v.upper = *value;
      lower_touched = true;
    } else if (type == "FR") {
      v.lower.reset();
      v.upper.reset();
      lower_touched = true;
    } else if (type == "MI") {
      v.lower.reset();
      lower_touched = true;
    } else if (type == "PL") {
      v.upper.reset();
    } else if (type == "BV") {
      v.kind = VarKind::kBinary;
      v.lower = Rat(0);
      v.upper = Rat(1);
      lower_touched = true;
    } else if (type == "UI") {
      v.kind = VarKind::kInteger;
      v.upper = rat_floor(*value);
      if (*value < 0 && !lower_touched && v.lower == Rat(0)) v.lower.reset();
    } else if (type == "LI") {
      v.kind = VarKind::kInteger;
      v.lower = rat_ceil(*value);
      lower_touched = true;
    } else {
      malformed("unsupported bound type '" + type + "'");
    }
  }

  Model finish() {
    if (!objective_row_) throw Error(ErrorCode::kMalformedField, "no objective (N) row");
    for (size_t i = 0; i < rows_.size(); ++i) {
      auto& r = rows_[i];
      if (i == *objective_row_) {
        model_.objective.body = Expr::sum(std::move(r.terms));
        // RHS on the objective row is the negated objective constant.
        model_.objective.constant = -r.rhs;
        continue;
      }
      if (r.type == RowType::kN) continue;
      Bound lo;
      Bound hi;
      switch (r.type) {
        case RowType::kL:
          hi = r.rhs;
          if (r.range) lo = r.rhs - abs(*r.range);
          break;
        case RowType::kG:
          lo = r.rhs;
          if (r.range) hi = r.rhs + abs(*r.range);
          break;
        case RowType::kE:
          lo = r.rhs;
          hi = r.rhs;
          if (r.range) {
            if (*r.range > 0) {
              hi = r.rhs + *r.range;
            } else {
              lo = r.rhs + *r.range;
            }
          }
          break;
        case RowType::kN: break;
      }
      model_.constraints.push_back(Constraint{Expr::sum(std::move(r.terms)), lo, hi, Origin::kParsed, r.name});
    }
    model_.validate();
    return std::move(model_);
  }

  Model model_;
  Section section_ = Section::kNone;
  size_t line_no_ = 0;
  std::vector<Row> rows_;
  std::unordered_map<std::string, size_t> row_index_;
  std::unordered_map<std::string, VarId> col_index_;
  std::map<VarId, bool> lower_set_;
  std::optional<size_t> objective_row_;
  std::vector<size_t> ignored_rows_;
  bool in_integer_block_ = false;
};

}  // namespace

Model parse_mps(std::string_view text) { return MpsReader().read(text); }

}  // namespace smtopt
