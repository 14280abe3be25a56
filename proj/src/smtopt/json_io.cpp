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


#include "smtopt/json_io.hpp"

#include "smtopt/error.hpp"

namespace smtopt {

namespace {

Json opt_rat(const std::optional<Rat>& r) { return r ? encode(*r) : Json(nullptr); }

std::optional<Rat> decode_opt_rat(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return decode_rat(j);
}

Json encode_assignment(const Assignment& a) {
  Json out = Json::array();
  for (const auto& v : a) out.push_back(encode(v));
  return out;
}

template <typename E, size_t N>
E enum_from(const Json& j, const E (&values)[N], std::string_view (*name)(E), const char* what) {
  const std::string s = j.get<std::string>();
  for (E e : values) {
    if (name(e) == s) return e;
  }
  throw Error(ErrorCode::kMalformedDocument, std::string("unknown ") + what + " '" + s + "'");
}

constexpr OutcomeKind kKinds[] = {OutcomeKind::kOptimal, OutcomeKind::kInfeasible, OutcomeKind::kUnknown,
                                  OutcomeKind::kBoundExceeded};
constexpr PreprocessMode kPre[] = {PreprocessMode::kNoPre, PreprocessMode::kBinarize,
                                   PreprocessMode::kBinarizedFlatten, PreprocessMode::kNaiveFlatten};
constexpr IntegralityMode kInt[] = {IntegralityMode::kOneByOne, IntegralityMode::kAllInOne,
                                    IntegralityMode::kDisabled};
constexpr CrMethod kCr[] = {CrMethod::kNaive, CrMethod::kUbs, CrMethod::kHybrid};

// Runs `f`, turning json library exceptions into Error(kMalformedDocument).
template <typename F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kMalformedDocument, e.what());
  }
}

}  // namespace

std::string_view sat_status_name(SatStatus s) {
  switch (s) {
    case SatStatus::kSat:
      return "sat";
    case SatStatus::kUnsat:
      return "unsat";
    case SatStatus::kUnknown:
      return "unknown";
  }
  return "?";
}

Json encode(const Rat& r) { return to_string(r); }

Rat decode_rat(const Json& j) {
  if (!j.is_string()) throw Error(ErrorCode::kMalformedDocument, "expected a rational string");
  return parse_rat(j.get<std::string>());
}

Json encode(const OptOutcome& o) {
  Json j;
  j["status"] = outcome_kind_name(o.kind);
  j["value"] = opt_rat(o.value);
  if (o.value) j["value_decimal"] = to_decimal(*o.value, 9);
  j["witness"] = o.witness ? encode_assignment(*o.witness) : Json(nullptr);
  if (o.bracket) {
    j["bracket"] = {{"lo", opt_rat(o.bracket->lo)}, {"hi", encode(o.bracket->hi)}};
  } else {
    j["bracket"] = nullptr;
  }
  j["reason"] = o.reason;
  return j;
}

OptOutcome decode_outcome(const Json& j) {
  return guarded([&] {
    OptOutcome o;
    o.kind = enum_from(j.at("status"), kKinds, outcome_kind_name, "status");
    o.value = decode_opt_rat(j.at("value"));
    if (!j.at("witness").is_null()) {
      Assignment a;
      for (const auto& v : j.at("witness")) a.push_back(decode_rat(v));
      o.witness = std::move(a);
    }
    if (!j.at("bracket").is_null()) {
      o.bracket = Bracket{decode_opt_rat(j.at("bracket").at("lo")), decode_rat(j.at("bracket").at("hi"))};
    }
    o.reason = j.at("reason").get<std::string>();
    return o;
  });
}

Json encode(const SolverConfig& c) {
  Json j;
  j["command"] = c.command;
  j["args"] = c.args;
  j["logic"] = c.logic ? Json(*c.logic) : Json(nullptr);
  j["per_check_timeout_ms"] = c.per_check_timeout ? Json(c.per_check_timeout->count()) : Json(nullptr);
  j["native_power"] = c.use_native_power;
  j["power_unroll_cap"] = c.power_unroll_cap;
  return j;
}

SolverConfig decode_solver(const Json& j) {
  return guarded([&] {
    SolverConfig c;
    c.command = j.at("command").get<std::string>();
    c.args = j.at("args").get<std::vector<std::string>>();
    if (!j.at("logic").is_null()) c.logic = j.at("logic").get<std::string>();
    if (!j.at("per_check_timeout_ms").is_null()) {
      c.per_check_timeout = std::chrono::milliseconds(j.at("per_check_timeout_ms").get<long long>());
    }
    c.use_native_power = j.at("native_power").get<bool>();
    c.power_unroll_cap = j.at("power_unroll_cap").get<unsigned>();
    return c;
  });
}

Json encode(const FeatureVector& v) {
  return Json{{"name", vector_name(v)},
              {"preprocess", preprocess_mode_name(v.preprocess)},
              {"integrality", integrality_mode_name(v.integrality)},
              {"cr", cr_method_name(v.cr)},
              {"solver", encode(v.solver)}};
}

FeatureVector decode_vector(const Json& j) {
  return guarded([&] {
    FeatureVector v;
    v.preprocess = enum_from(j.at("preprocess"), kPre, preprocess_mode_name, "preprocess mode");
    v.integrality = enum_from(j.at("integrality"), kInt, integrality_mode_name, "integrality mode");
    v.cr = enum_from(j.at("cr"), kCr, cr_method_name, "method");
    v.solver = decode_solver(j.at("solver"));
    return v;
  });
}

Json encode(const WorkerRecord& w) {
  return Json{{"vector", encode(w.vector)},
              {"outcome", encode(w.outcome)},
              {"cancelled", w.cancelled},
              {"started", w.started},
              {"wall_ms", w.wall_ms},
              {"cuts_added", w.cuts.cuts_added},
              {"repair_iterations", w.cuts.repair_iterations},
              {"max_cuts_per_check", w.cuts.max_cuts_per_check},
              {"probes", w.probes}};
}

WorkerRecord decode_worker(const Json& j) {
  return guarded([&] {
    WorkerRecord w;
    w.vector = decode_vector(j.at("vector"));
    w.outcome = decode_outcome(j.at("outcome"));
    w.cancelled = j.at("cancelled").get<bool>();
    w.started = j.at("started").get<bool>();
    w.wall_ms = j.at("wall_ms").get<double>();
    w.cuts.cuts_added = j.at("cuts_added").get<std::size_t>();
    w.cuts.repair_iterations = j.at("repair_iterations").get<std::size_t>();
    w.cuts.max_cuts_per_check = j.value("max_cuts_per_check", std::size_t{0});
    w.probes = j.at("probes").get<std::size_t>();
    return w;
  });
}

Json encode(const PortfolioResult& r) {
  Json workers = Json::array();
  for (const auto& w : r.workers) workers.push_back(encode(w));
  return Json{{"winner", r.winner ? encode(*r.winner) : Json(nullptr)},
              {"outcome", encode(r.outcome)},
              {"objective_negated", r.objective_negated},
              {"workers", std::move(workers)},
              {"conflicts", r.conflicts},
              {"wall_ms", r.wall_ms}};
}

PortfolioResult decode_result(const Json& j) {
  return guarded([&] {
    PortfolioResult r;
    if (!j.at("winner").is_null()) r.winner = decode_vector(j.at("winner"));
    r.outcome = decode_outcome(j.at("outcome"));
    r.objective_negated = j.at("objective_negated").get<bool>();
    for (const auto& w : j.at("workers")) r.workers.push_back(decode_worker(w));
    r.conflicts = j.at("conflicts").get<std::vector<std::string>>();
    r.wall_ms = j.at("wall_ms").get<double>();
    return r;
  });
}

Json encode(const ProbeRecord& p) {
  return Json{{"type", "probe"},
              {"phase", p.phase},
              {"bound", opt_rat(p.bound)},
              {"verdict", sat_status_name(p.verdict)},
              {"objective", opt_rat(p.objective)},
              {"lo", opt_rat(p.lo)},
              {"hi", opt_rat(p.hi)},
              {"elapsed_ms", p.elapsed_ms}};
}

}  // namespace smtopt
