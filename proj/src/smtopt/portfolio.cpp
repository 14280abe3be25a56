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


#include "smtopt/portfolio.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <fstream>
#include <memory>
#include <mutex>
#include <stop_token>
#include <thread>
#include <utility>

#include "smtopt/error.hpp"
#include "smtopt/json_io.hpp"
#include "smtopt/preprocess.hpp"

namespace smtopt {

namespace {

constexpr CrMethod kMethods[] = {CrMethod::kUbs, CrMethod::kNaive, CrMethod::kHybrid};

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  for (;;) {
    auto k = s.find(sep);
    out.push_back(s.substr(0, k));
    if (k == std::string_view::npos) break;
    s.remove_prefix(k + 1);
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

std::optional<CrMethod> method_from_name(std::string_view name) {
  for (CrMethod m : kMethods) {
    if (cr_method_name(m) == name) return m;
  }
  return std::nullopt;
}

const Family* family_from_name(std::string_view name) {
  for (const auto& f : families()) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

}  // namespace

std::string_view preprocess_mode_name(PreprocessMode p) {
  switch (p) {
    case PreprocessMode::kNoPre:
      return "NoPre";
    case PreprocessMode::kBinarize:
      return "Binarize";
    case PreprocessMode::kBinarizedFlatten:
      return "BinarizedFlatten";
    case PreprocessMode::kNaiveFlatten:
      return "NaiveFlatten";
  }
  return "?";
}

const std::vector<Family>& families() {
  static const std::vector<Family> kFamilies = {
      {"allinone", PreprocessMode::kNoPre, IntegralityMode::kAllInOne},
      {"onebyone", PreprocessMode::kNoPre, IntegralityMode::kOneByOne},
      {"nobb", PreprocessMode::kNoPre, IntegralityMode::kDisabled},
      {"bin_allinone", PreprocessMode::kBinarize, IntegralityMode::kAllInOne},
      {"bin_onebyone", PreprocessMode::kBinarize, IntegralityMode::kOneByOne},
      {"bin_flattening", PreprocessMode::kBinarizedFlatten, IntegralityMode::kDisabled},
      {"naive_flattening", PreprocessMode::kNaiveFlatten, IntegralityMode::kDisabled, false},
  };
  return kFamilies;
}

std::string_view family_name(PreprocessMode p, IntegralityMode i) {
  for (const auto& f : families()) {
    if (f.preprocess == p && f.integrality == i) return f.name;
  }
  return {};
}

std::string vector_name(const FeatureVector& v) {
  std::string_view fam = family_name(v.preprocess, v.integrality);
  std::string out;
  if (fam.empty()) {
    out = std::string(preprocess_mode_name(v.preprocess)) + "+" + std::string(integrality_mode_name(v.integrality));
  } else {
    out = fam;
  }
  return out + "-" + std::string(cr_method_name(v.cr));
}

std::string vector_problem(const FeatureVector& v, const Model& model) {
  if ((v.preprocess == PreprocessMode::kBinarizedFlatten || v.preprocess == PreprocessMode::kNaiveFlatten) &&
      v.integrality != IntegralityMode::kDisabled) {
    return "flattening requires integrality Disabled";
  }
  if (!model.has_integer_variables() &&
      (v.preprocess != PreprocessMode::kNoPre || v.integrality != IntegralityMode::kDisabled)) {
    return "models without integer variables require NoPre and Disabled";
  }
  if (v.solver.command.empty()) return "no solver command";
  return {};
}

void validate_vector(const FeatureVector& v, const Model& model) {
  if (auto why = vector_problem(v, model); !why.empty()) {
    throw Error(ErrorCode::kInvalidVector, vector_name(v) + ": " + why);
  }
}

std::vector<FeatureVector> default_vectors(ProblemClass c, const SolverConfig& solver) {
  const bool integer_free = c == ProblemClass::kLP || c == ProblemClass::kNLP;
  std::vector<FeatureVector> out;
  for (const auto& f : families()) {
    if (!f.in_default || (integer_free && f.name != "nobb")) continue;
    for (CrMethod m : kMethods) out.push_back(FeatureVector{f.preprocess, f.integrality, m, solver});
  }
  return out;
}

std::vector<FeatureVector> select_vectors(std::string_view spec, const Model& model, const SolverConfig& solver) {
  std::vector<FeatureVector> out;
  auto add = [&](const FeatureVector& v, bool explicit_pick) {
    if (std::find(out.begin(), out.end(), v) != out.end()) return;
    if (explicit_pick) {
      validate_vector(v, model);
    } else if (!vector_problem(v, model).empty()) {
      return;
    }
    out.push_back(v);
  };
  for (std::string_view raw : split(spec, ',')) {
    std::string_view item = trim(raw);
    if (item.empty()) continue;
    if (item == "all") {
      for (const auto& v : default_vectors(classify(model), solver)) add(v, false);
      continue;
    }
    if (auto m = method_from_name(item)) {
      for (const auto& f : families()) {
        if (f.in_default) add(FeatureVector{f.preprocess, f.integrality, *m, solver}, false);
      }
      continue;
    }
    if (const Family* f = family_from_name(item)) {
      for (CrMethod m : kMethods) add(FeatureVector{f->preprocess, f->integrality, m, solver}, false);
      continue;
    }
    auto dash = item.rfind('-');
    const Family* f = dash == std::string_view::npos ? nullptr : family_from_name(item.substr(0, dash));
    auto m = dash == std::string_view::npos ? std::nullopt : method_from_name(item.substr(dash + 1));
    if (!f || !m) throw Error(ErrorCode::kInvalidVector, "unknown vector '" + std::string(item) + "'");
    add(FeatureVector{f->preprocess, f->integrality, *m, solver}, true);
  }
  if (out.empty()) throw Error(ErrorCode::kInvalidVector, "'" + std::string(spec) + "' selects no valid vector");
  return out;
}

std::filesystem::path worker_log_path(const std::filesystem::path& dir, std::string_view benchmark,
                                      const FeatureVector& v) {
  std::string file = std::string(benchmark) + "__" + vector_name(v) + ".jsonl";
  std::replace_if(file.begin(), file.end(), [](char c) { return c == '/' || c == ' '; }, '_');
  return dir / file;
}

WorkerRecord run_worker(const Model& model, const FeatureVector& v, const PortfolioOptions& opt,
                        const CancelToken& cancel) {
  validate_vector(v, model);
  const auto t0 = Clock::now();
  WorkerRecord rec;
  rec.vector = v;
  rec.started = true;

  std::ofstream log;
  if (opt.log_dir) {
    std::filesystem::create_directories(*opt.log_dir);
    log.open(worker_log_path(*opt.log_dir, opt.benchmark, v), std::ios::trunc);
    Json start{{"type", "start"},
               {"benchmark", opt.benchmark},
               {"vector", vector_name(v)},
               {"class", std::string(problem_class_name(classify(model)))}};
    log << start.dump() << '\n';
  }

  std::unique_ptr<SessionChecker> checker;
  try {
    Model m = model;
    if (v.preprocess == PreprocessMode::kBinarize || v.preprocess == PreprocessMode::kBinarizedFlatten) {
      m = binarize(std::move(m)).first;
    }
    if (v.preprocess == PreprocessMode::kBinarizedFlatten) m = flatten_binarized(std::move(m));
    if (v.preprocess == PreprocessMode::kNaiveFlatten) m = flatten_naive(std::move(m));
    const bool integer_sorts = v.integrality == IntegralityMode::kDisabled && m.has_integer_variables();

    SmtSession session = SmtSession::open(v.solver, m, integer_sorts, cancel);
    checker = std::make_unique<SessionChecker>(session, m, v.integrality, opt.max_cut_rounds);

    CrOptions cr;
    cr.eps = opt.eps;
    cr.max_iters = opt.naive_max_iters;
    cr.doubling_cap = opt.doubling_cap;
    cr.on_probe = [&](const ProbeRecord& p) {
      ++rec.probes;
      if (log.is_open()) log << encode(p).dump() << '\n';
      if (opt.on_probe) opt.on_probe(v, p);
      // A fast solver never blocks long enough for the read loop to notice.
      if (cancel.stop.stop_requested()) throw Error(ErrorCode::kCancelled, "cancelled");
      if (cancel.expired()) throw Error(ErrorCode::kTimeout, "deadline exceeded");
    };
    rec.outcome = optimize(v.cr, *checker, cr);
    if (rec.outcome.witness) rec.outcome.witness->resize(model.variables.size());
    session.close();
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::kCancelled:
        rec.cancelled = true;
        rec.outcome = OptOutcome::unknown("cancelled");
        break;
      case ErrorCode::kTimeout:
        rec.outcome = OptOutcome::unknown("timeout");
        break;
      case ErrorCode::kSolverDied:
        rec.outcome = OptOutcome::unknown("solver died");
        break;
      default:
        rec.outcome = OptOutcome::unknown(e.what());
        break;
    }
  } catch (const std::exception& e) {
    rec.outcome = OptOutcome::unknown(e.what());
  }
  if (checker) rec.cuts = checker->cut_stats();
  rec.wall_ms = ms_since(t0);

  if (log.is_open()) {
    Json end = encode(rec);
    end["type"] = "result";
    end["benchmark"] = opt.benchmark;
    log << end.dump() << '\n';
  }
  return rec;
}

namespace {

void to_original_sense(OptOutcome& o) {
  if (o.value) *o.value = -*o.value;
}

void cross_check(PortfolioResult& r, const Rat& eps) {
  const WorkerRecord* first_optimal = nullptr;
  const WorkerRecord* first_infeasible = nullptr;
  for (const auto& w : r.workers) {
    if (w.outcome.kind == OutcomeKind::kOptimal && !first_optimal) first_optimal = &w;
    if (w.outcome.kind == OutcomeKind::kInfeasible && !first_infeasible) first_infeasible = &w;
  }
  if (first_optimal && first_infeasible) {
    r.conflicts.push_back(vector_name(first_optimal->vector) + " Optimal vs " +
                          vector_name(first_infeasible->vector) + " Infeasible");
  }
  for (size_t i = 0; i < r.workers.size(); ++i) {
    for (size_t j = i + 1; j < r.workers.size(); ++j) {
      const auto& a = r.workers[i].outcome;
      const auto& b = r.workers[j].outcome;
      if (a.kind != OutcomeKind::kOptimal || b.kind != OutcomeKind::kOptimal) continue;
      if (abs(*a.value - *b.value) > 2 * eps) {
        r.conflicts.push_back(vector_name(r.workers[i].vector) + " = " + to_string(*a.value) + " vs " +
                              vector_name(r.workers[j].vector) + " = " + to_string(*b.value));
      }
    }
  }
}

}  // namespace

PortfolioResult run_portfolio(const Model& original, const std::vector<FeatureVector>& vectors,
                              const PortfolioOptions& opt) {
  if (vectors.empty()) throw Error(ErrorCode::kInvalidVector, "no feature vectors");
  const Model model = normalize_to_min(original);
  for (const auto& v : vectors) validate_vector(v, model);

  const auto t0 = Clock::now();
  std::optional<Clock::time_point> deadline;
  if (opt.timeout) deadline = t0 + *opt.timeout;

  const size_t n = vectors.size();
  std::vector<std::optional<WorkerRecord>> slots(n);
  std::optional<size_t> winner;

  if (opt.sequential || opt.jobs == 1) {
    for (size_t i = 0; i < n; ++i) {
      if (winner && !opt.cross_check) break;
      slots[i] = run_worker(model, vectors[i], opt, CancelToken{{}, deadline});
      if (!winner && slots[i]->outcome.definitive()) winner = i;
    }
  } else {
    std::vector<std::stop_source> stops(n);
    std::mutex mu;
    std::atomic<size_t> next{0};
    const size_t jobs = opt.jobs == 0 ? n : std::min(opt.jobs, n);
    {
      std::vector<std::jthread> pool;
      pool.reserve(jobs);
      for (size_t t = 0; t < jobs; ++t) {
        pool.emplace_back([&] {
          for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= n) return;
            {
              std::lock_guard lock(mu);
              if (winner && !opt.cross_check) return;
            }
            WorkerRecord rec = run_worker(model, vectors[i], opt, CancelToken{stops[i].get_token(), deadline});
            std::lock_guard lock(mu);
            if (!winner && rec.outcome.definitive()) {
              winner = i;
              if (!opt.cross_check) {
                for (size_t k = 0; k < n; ++k) {
                  if (k != i) stops[k].request_stop();
                }
              }
            }
            slots[i] = std::move(rec);
          }
        });
      }
    }
  }

  PortfolioResult result;
  result.objective_negated = model.objective_negated;
  for (size_t i = 0; i < n; ++i) {
    WorkerRecord rec;
    if (slots[i]) {
      rec = std::move(*slots[i]);
    } else {
      rec.vector = vectors[i];
      rec.cancelled = true;
      rec.outcome = OptOutcome::unknown("cancelled");
    }
    if (model.objective_negated) to_original_sense(rec.outcome);
    result.workers.push_back(std::move(rec));
  }
  if (opt.cross_check) cross_check(result, opt.eps);

  if (winner) {
    result.winner = result.workers[*winner].vector;
    result.outcome = result.workers[*winner].outcome;
  } else {
    auto bounded = std::find_if(result.workers.begin(), result.workers.end(),
                                [](const WorkerRecord& w) { return w.outcome.kind == OutcomeKind::kBoundExceeded; });
    if (bounded != result.workers.end()) {
      result.outcome = bounded->outcome;
    } else {
      std::string reasons;
      for (const auto& w : result.workers) {
        if (!reasons.empty()) reasons += "; ";
        reasons += vector_name(w.vector) + ": " + w.outcome.reason;
      }
      result.outcome = OptOutcome::unknown(reasons);
    }
  }
  result.wall_ms = ms_since(t0);
  return result;
}

}  // namespace smtopt
