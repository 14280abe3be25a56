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

#include "smtopt/smt_session.hpp"

#include <cctype>
#include <unordered_set>
#include <utility>

#include "smtopt/error.hpp"

namespace smtopt {

namespace {

constexpr auto kCloseGrace = std::chrono::milliseconds(500);

// Names that would clash with theory symbols or reserved words.
const std::unordered_set<std::string>& reserved_symbols() {
  static const std::unordered_set<std::string> kReserved = {
      "true", "false", "not", "and", "or", "xor", "=>", "ite", "distinct", "=", "<", "<=", ">", ">=",
      "+", "-", "*", "/", "div", "mod", "abs", "to_real", "to_int", "is_int", "exp", "sin", "cos", "tan",
      "pi", "let", "forall", "exists", "match", "par", "_", "!", "as", "NUMERAL", "DECIMAL", "STRING",
      "BINARY", "HEXADECIMAL", "Int", "Real", "Bool", "^", "root-obj", "select", "store"};
  return kReserved;
}

bool is_simple_symbol(std::string_view s) {
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s.front()))) return false;
  static constexpr std::string_view kExtra = "~!@$%^&*_-+=<>.?/";
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && kExtra.find(c) == std::string_view::npos) return false;
  }
  return true;
}

// Minimal s-expression tree for solver responses.
struct SNode {
  bool is_list = false;
  std::string atom;
  std::vector<SNode> items;
};

class SParser {
 public:
  explicit SParser(std::string_view text) : text_(text) {}

  std::optional<SNode> parse_one() {
    skip();
    if (pos_ >= text_.size()) return std::nullopt;
    auto node = parse();
    skip();
    if (!node || pos_ != text_.size()) return std::nullopt;
    return node;
  }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_[pos_] == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::optional<SNode> parse() {
    skip();
    if (pos_ >= text_.size()) return std::nullopt;
    char c = text_[pos_];
    if (c == ')') return std::nullopt;
    if (c == '(') {
      ++pos_;
      SNode node;
      node.is_list = true;
      for (;;) {
        skip();
        if (pos_ >= text_.size()) return std::nullopt;
        if (text_[pos_] == ')') {
          ++pos_;
          return node;
        }
        auto child = parse();
        if (!child) return std::nullopt;
        node.items.push_back(std::move(*child));
      }
    }
    size_t start = pos_;
    if (c == '"') {
      for (++pos_; pos_ < text_.size(); ++pos_) {
        if (text_[pos_] == '"') {
          if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '"') {
            ++pos_;
          } else {
            break;
          }
        }
      }
      if (pos_ >= text_.size()) return std::nullopt;
      ++pos_;
    } else if (c == '|') {
      pos_ = text_.find('|', pos_ + 1);
      if (pos_ == std::string_view::npos) return std::nullopt;
      ++pos_;
    } else {
      while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
             text_[pos_] != '(' && text_[pos_] != ')') {
        ++pos_;
      }
    }
    SNode node;
    node.atom = std::string(text_.substr(start, pos_ - start));
    return node;
  }

  std::string_view text_;
  size_t pos_ = 0;
};

std::optional<Rat> value_of(const SNode& n) {
  if (!n.is_list) {
    const std::string& a = n.atom;
    if (a.empty() || a.back() == '?') return std::nullopt;  // approximations
    if (!std::isdigit(static_cast<unsigned char>(a.front()))) return std::nullopt;
    if (a.find('/') != std::string::npos) return std::nullopt;
    return try_parse_rat(a);
  }
  if (n.items.empty() || n.items.front().is_list) return std::nullopt;
  const std::string& head = n.items.front().atom;
  if (head == "-" && n.items.size() == 2) {
    auto v = value_of(n.items[1]);
    if (!v) return std::nullopt;
    return Rat(-*v);
  }
  if (head == "-" && n.items.size() == 3) {
    auto a = value_of(n.items[1]);
    auto b = value_of(n.items[2]);
    if (!a || !b) return std::nullopt;
    return Rat(*a - *b);
  }
  if (head == "/" && n.items.size() == 3) {
    auto a = value_of(n.items[1]);
    auto b = value_of(n.items[2]);
    if (!a || !b || *b == 0) return std::nullopt;
    return Rat(*a / *b);
  }
  if (head == "to_real" && n.items.size() == 2) return value_of(n.items[1]);
  if (head == "+" && n.items.size() >= 2) {
    Rat s = 0;
    for (size_t i = 1; i < n.items.size(); ++i) {
      auto v = value_of(n.items[i]);
      if (!v) return std::nullopt;
      s += *v;
    }
    return s;
  }
  if (head == "*" && n.items.size() >= 2) {
    Rat p = 1;
    for (size_t i = 1; i < n.items.size(); ++i) {
      auto v = value_of(n.items[i]);
      if (!v) return std::nullopt;
      p *= *v;
    }
    return p;
  }
  return std::nullopt;
}

const char* cmp_symbol(Cmp c) {
  switch (c) {
    case Cmp::kLe: return "<=";
    case Cmp::kGe: return ">=";
    case Cmp::kEq: return "=";
  }
  return "=";
}

// Constant value of a variable-free subtree, if it is exactly rational.
std::optional<Rat> constant_value(const Expr& e) {
  if (e.is_const()) return e.value();
  if (e.op() == Op::kVar || e.op() == Op::kExp) return std::nullopt;
  for (const auto& c : e.children()) {
    if (!constant_value(c)) return std::nullopt;
  }
  try {
    return eval(e, Assignment{});
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

std::optional<Rat> parse_smt_value(std::string_view text) {
  auto node = SParser(text).parse_one();
  if (!node) return std::nullopt;
  return value_of(*node);
}

SolverConfig SolverConfig::z3(std::string command) {
  SolverConfig c;
  c.command = std::move(command);
  c.args = {"-in"};
  return c;
}

// ---------------------------------------------------------------------------
// Formula

Formula Formula::of(Atom a) {
  Formula f;
  f.kind = Kind::kAtom;
  f.atom = std::move(a);
  return f;
}

Formula Formula::all_of(std::vector<Formula> parts) {
  Formula f;
  f.kind = Kind::kAnd;
  f.children = std::move(parts);
  return f;
}

Formula Formula::any_of(std::vector<Formula> parts) {
  Formula f;
  f.kind = Kind::kOr;
  f.children = std::move(parts);
  return f;
}

Formula Formula::of(const Disjunction& d) {
  std::vector<Formula> parts;
  for (const auto& a : d.atoms) parts.push_back(of(a));
  return any_of(std::move(parts));
}

// ---------------------------------------------------------------------------
// SmtEmitter

const std::string& SmtEmitter::declare(VarId id, std::string_view name, Sort sort) {
  if (id != symbols_.size()) throw Error(ErrorCode::kInvalidArgument, "variables must be declared in id order");
  std::string sym;
  if (is_simple_symbol(name) && !reserved_symbols().count(std::string(name))) {
    sym = std::string(name);
  } else if (!name.empty() && name.find('|') == std::string_view::npos &&
             name.find('\\') == std::string_view::npos && !reserved_symbols().count(std::string(name))) {
    sym = "|" + std::string(name) + "|";
  } else {
    sym = "v!" + std::to_string(id);
  }
  // keep symbols unique even after renaming
  while (taken_.count(sym)) sym = "v!" + std::to_string(id) + "!" + std::to_string(taken_.size());
  taken_.insert(sym);
  symbols_.push_back(std::move(sym));
  sorts_.push_back(sort);
  return symbols_.back();
}

const std::string& SmtEmitter::symbol(VarId id) const {
  if (id >= symbols_.size()) throw Error(ErrorCode::kInvalidArgument, "undeclared variable " + std::to_string(id));
  return symbols_[id];
}

std::string SmtEmitter::literal(const Rat& r) {
  const bool negative = r < 0;
  Rat a = abs(r);
  std::string body = is_integral(a) ? a.get_num().get_str()
                                    : "(/ " + a.get_num().get_str() + " " + a.get_den().get_str() + ")";
  return negative ? "(- " + body + ")" : body;
}

void SmtEmitter::term_into(std::string& out, const Expr& e) const {
  auto nary = [&](const char* head) {
    out += '(';
    out += head;
    for (const auto& c : e.children()) {
      out += ' ';
      term_into(out, c);
    }
    out += ')';
  };
  switch (e.op()) {
    case Op::kConst: out += literal(e.value()); return;
    case Op::kVar: {
      const std::string& sym = symbol(e.var_id());
      out += sorts_[e.var_id()] == Sort::kInt ? "(to_real " + sym + ")" : sym;
      return;
    }
    case Op::kSum: nary("+"); return;
    case Op::kNegate: nary("-"); return;
    case Op::kProduct: nary("*"); return;
    case Op::kSubtract: nary("-"); return;
    case Op::kDivide: nary("/"); return;
    case Op::kExp: nary("exp"); return;
    case Op::kPower: {
      const Expr& base = e.children()[0];
      auto k = constant_value(e.children()[1]);
      if (!k || !is_integral(*k) || *k < 0) {
        throw Error(ErrorCode::kNonIntegerExponent, "power exponent must be a nonnegative integer constant");
      }
      if (native_power_) {
        out += "(^ ";
        term_into(out, base);
        out += ' ' + literal(*k) + ')';
        return;
      }
      if (*k > unroll_cap_) {
        throw Error(ErrorCode::kExponentTooLarge, to_string(*k) + " exceeds cap " + std::to_string(unroll_cap_));
      }
      long n = k->get_num().get_si();
      if (n == 0) {
        out += '1';
        return;
      }
      if (n == 1) {
        term_into(out, base);
        return;
      }
      std::string b;
      term_into(b, base);
      out += "(*";
      for (long i = 0; i < n; ++i) out += ' ' + b;
      out += ')';
      return;
    }
  }
}

std::string SmtEmitter::term(const Expr& e) const {
  std::string out;
  term_into(out, e);
  return out;
}

std::string SmtEmitter::formula(const Formula& f) const {
  switch (f.kind) {
    case Formula::Kind::kAtom:
      return std::string("(") + cmp_symbol(f.atom->cmp) + " " + term(f.atom->lhs) + " " + term(f.atom->rhs) + ")";
    case Formula::Kind::kAnd:
    case Formula::Kind::kOr: {
      if (f.children.empty()) return f.kind == Formula::Kind::kAnd ? "true" : "false";
      if (f.children.size() == 1) return formula(f.children.front());
      std::string out = f.kind == Formula::Kind::kAnd ? "(and" : "(or";
      for (const auto& c : f.children) out += " " + formula(c);
      return out + ")";
    }
  }
  return "true";
}

std::vector<std::string> SmtEmitter::assert_commands(const Formula& f) const {
  std::vector<std::string> out;
  if (f.kind == Formula::Kind::kAnd) {
    for (const auto& c : f.children) {
      auto sub = assert_commands(c);
      out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
  }
  out.push_back("(assert " + formula(f) + ")");
  return out;
}

// ---------------------------------------------------------------------------
// SmtSession

SmtSession::SmtSession(SolverConfig config, CancelToken cancel, bool keep_transcript)
    : config_(std::move(config)),
      cancel_(std::move(cancel)),
      emitter_(config_.use_native_power, config_.power_unroll_cap),
      keep_transcript_(keep_transcript) {}

SmtSession::SmtSession(SmtSession&&) noexcept = default;
SmtSession& SmtSession::operator=(SmtSession&&) noexcept = default;

SmtSession::~SmtSession() { close(); }

bool SmtSession::alive() const { return process_ && process_->alive(); }

void SmtSession::send(const std::string& cmd) {
  if (!alive()) throw Error(ErrorCode::kSolverDied, "solver is not running");
  if (keep_transcript_) transcript_.push_back(cmd);
  process_->write(cmd);
  process_->write("\n");
}

std::string SmtSession::read_response(std::optional<Clock::time_point> local_deadline) {
  auto r = process_->read_sexpr(cancel_, local_deadline);
  if (!r) return {};
  return *r;
}

void SmtSession::command(const std::string& cmd) {
  send(cmd);
  std::string response = read_response();
  if (response != "success") {
    throw Error(ErrorCode::kProtocolError, "'" + cmd.substr(0, 80) + "' answered with: " + response);
  }
}

SmtSession SmtSession::open(const SolverConfig& config, const Model& model, bool integer_sorts,
                            CancelToken cancel, bool keep_transcript) {
  SmtSession s(config, std::move(cancel), keep_transcript);
  s.process_ = std::make_unique<ChildProcess>(config.command, config.args);

  // handshake
  try {
    s.send("(set-option :print-success true)");
    std::string banner = s.read_response();
    if (banner != "success") throw Error(ErrorCode::kHandshakeFailure, banner);
    s.send("(set-option :produce-models true)");
    std::string models = s.read_response();
    if (models != "success") throw Error(ErrorCode::kHandshakeFailure, models);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kHandshakeFailure || e.code() == ErrorCode::kCancelled ||
        e.code() == ErrorCode::kTimeout) {
      throw;
    }
    throw Error(ErrorCode::kHandshakeFailure, e.detail());
  }

  const bool has_ints = integer_sorts && model.has_integer_variables();
  if (config.logic) {
    s.command("(set-logic " + *config.logic + ")");
  } else {
    s.send("(set-logic ALL)");
    if (s.read_response() != "success") {
      s.command(std::string("(set-logic ") + (has_ints ? "QF_NIRA" : "QF_NRA") + ")");
    }
  }

  for (const auto& v : model.variables) {
    Sort sort = integer_sorts && v.is_integer() ? Sort::kInt : Sort::kReal;
    const std::string& sym = s.emitter_.declare(v.id, v.name, sort);
    s.command("(declare-fun " + sym + " () " + (sort == Sort::kInt ? "Int" : "Real") + ")");
    Bound lo = v.lower;
    Bound hi = v.upper;
    if (sort == Sort::kInt) {
      if (lo) lo = rat_ceil(*lo);
      if (hi) hi = rat_floor(*hi);
    }
    if (lo && hi && *lo == *hi) {
      s.command("(assert (= " + sym + " " + SmtEmitter::literal(*lo) + "))");
      continue;
    }
    if (lo) s.command("(assert (>= " + sym + " " + SmtEmitter::literal(*lo) + "))");
    if (hi) s.command("(assert (<= " + sym + " " + SmtEmitter::literal(*hi) + "))");
  }
  for (const auto& c : model.constraints) {
    std::vector<Formula> parts;
    if (c.lower && c.upper && *c.lower == *c.upper) {
      parts.push_back(Formula::of(Atom{c.body, Cmp::kEq, Expr::constant(*c.lower)}));
    } else {
      if (c.lower) parts.push_back(Formula::of(Atom{c.body, Cmp::kGe, Expr::constant(*c.lower)}));
      if (c.upper) parts.push_back(Formula::of(Atom{c.body, Cmp::kLe, Expr::constant(*c.upper)}));
    }
    s.assert_formula(Formula::all_of(std::move(parts)));
  }
  for (const auto& d : model.disjunctions) s.assert_formula(Formula::of(d));
  return s;
}

VarId SmtSession::declare(std::string_view name, Sort sort) {
  auto id = static_cast<VarId>(emitter_.size());
  const std::string& sym = emitter_.declare(id, name, sort);
  command("(declare-fun " + sym + " () " + (sort == Sort::kInt ? "Int" : "Real") + ")");
  return id;
}

void SmtSession::assert_formula(const Formula& f) {
  for (const auto& cmd : emitter_.assert_commands(f)) command(cmd);
}

void SmtSession::push() {
  command("(push 1)");
  ++depth_;
}

void SmtSession::pop() {
  if (depth_ == 0) throw Error(ErrorCode::kPopOnEmptyStack, "pop at depth 0");
  command("(pop 1)");
  --depth_;
}

std::string SmtSession::reason_unknown() {
  send("(get-info :reason-unknown)");
  std::string response = read_response();
  auto node = SParser(response).parse_one();
  if (node && node->is_list) {
    for (const auto& item : node->items) {
      if (!item.is_list && item.atom.size() >= 2 && item.atom.front() == '"') {
        return item.atom.substr(1, item.atom.size() - 2);
      }
      if (!item.is_list && item.atom != ":reason-unknown" && item.atom.front() != ':') return item.atom;
    }
  }
  return "unknown";
}

SatResult SmtSession::check_sat() {
  std::optional<Clock::time_point> local_deadline;
  if (config_.per_check_timeout) local_deadline = Clock::now() + *config_.per_check_timeout;
  send("(check-sat)");
  ++num_checks_;
  std::string verdict = read_response(local_deadline);
  if (verdict.empty()) {
    // Per-check timeout: the solver is busy and cannot be interrupted
    // portably, so the session ends here.
    process_->kill();
    return SatResult::unknown("timeout");
  }
  if (verdict == "unsat") return SatResult::unsat();
  if (verdict == "unknown") return SatResult::unknown(reason_unknown());
  if (verdict != "sat") throw Error(ErrorCode::kProtocolError, "check-sat answered with: " + verdict);

  if (emitter_.size() == 0) return SatResult::sat(Assignment{});
  std::string cmd = "(get-value (";
  for (size_t i = 0; i < emitter_.size(); ++i) {
    if (i) cmd += ' ';
    cmd += emitter_.symbol(static_cast<VarId>(i));
  }
  cmd += "))";
  send(cmd);
  std::string response = read_response();
  auto node = SParser(response).parse_one();
  if (!node || !node->is_list || node->items.size() != emitter_.size()) {
    throw Error(ErrorCode::kProtocolError, "get-value answered with: " + response.substr(0, 200));
  }
  Assignment a;
  a.reserve(emitter_.size());
  bool parseable = true;
  for (size_t i = 0; i < node->items.size(); ++i) {
    const SNode& pair = node->items[i];
    if (!pair.is_list || pair.items.size() != 2) {
      throw Error(ErrorCode::kProtocolError, "malformed get-value pair in: " + response.substr(0, 200));
    }
    auto v = value_of(pair.items[1]);
    if (!v) {
      parseable = false;
      a.emplace_back(0);
    } else {
      a.push_back(*v);
    }
  }
  if (!parseable) return SatResult::sat(std::nullopt);
  return SatResult::sat(std::move(a));
}

void SmtSession::close() {
  if (process_) {
    process_->shutdown("(exit)\n", kCloseGrace);
    process_.reset();
  }
}

}  // namespace smtopt
