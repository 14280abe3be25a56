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

// Feature vectors and the parallel portfolio. Every vector runs as an
// isolated worker with its own derived model and solver process; the first
// definitive outcome (Optimal or Infeasible) wins and cancels the rest.

#ifndef SMTOPT_PORTFOLIO_HPP_
#define SMTOPT_PORTFOLIO_HPP_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "smtopt/cr_opt.hpp"
#include "smtopt/integrality.hpp"
#include "smtopt/model.hpp"
#include "smtopt/process.hpp"
#include "smtopt/smt_session.hpp"

namespace smtopt {

// kNaiveFlatten is not part of the default portfolio; it exists for
// cross-checking the other encodings on small ranges.
enum class PreprocessMode { kNoPre, kBinarize, kBinarizedFlatten, kNaiveFlatten };

std::string_view preprocess_mode_name(PreprocessMode p);

struct FeatureVector {
  PreprocessMode preprocess = PreprocessMode::kNoPre;
  IntegralityMode integrality = IntegralityMode::kDisabled;
  CrMethod cr = CrMethod::kUbs;
  SolverConfig solver;
  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

// Preprocessing/integrality pairs, named after the benchmark table columns.
// nobb = (NoPre, Disabled).
struct Family {
  std::string_view name;
  PreprocessMode preprocess;
  IntegralityMode integrality;
  bool in_default = true;
};
const std::vector<Family>& families();

// "<family>-<method>", e.g. "bin_flattening-ubs".
std::string vector_name(const FeatureVector& v);
std::string_view family_name(PreprocessMode p, IntegralityMode i);

// Empty string when valid, else the reason.
std::string vector_problem(const FeatureVector& v, const Model& model);
// Throws Error(kInvalidVector).
void validate_vector(const FeatureVector& v, const Model& model);

// 3 vectors for integer-free classes, 18 otherwise.
std::vector<FeatureVector> default_vectors(ProblemClass c, const SolverConfig& solver);

// Comma separated items: "<family>", "<family>-<method>", "<method>" or
// "all". Items naming several vectors keep only those valid for `model`.
// Throws Error(kInvalidVector) on unknown names or explicit invalid vectors.
std::vector<FeatureVector> select_vectors(std::string_view spec, const Model& model, const SolverConfig& solver);

struct WorkerRecord {
  FeatureVector vector;
  OptOutcome outcome;
  bool cancelled = false;
  // False when the worker was cancelled before it started.
  bool started = false;
  double wall_ms = 0;
  CutStats cuts;
  std::size_t probes = 0;
  friend bool operator==(const WorkerRecord&, const WorkerRecord&) = default;
};

struct PortfolioOptions {
  Rat eps{1, 1000};
  std::optional<std::chrono::milliseconds> timeout;
  // 0 = one thread per vector.
  std::size_t jobs = 0;
  // Runs vectors one after another in the given order.
  bool sequential = false;
  // Runs every vector to completion and compares the outcomes.
  bool cross_check = false;
  std::optional<std::filesystem::path> log_dir;
  std::string benchmark = "model";
  std::size_t naive_max_iters = 100000;
  unsigned doubling_cap = 64;
  std::optional<std::size_t> max_cut_rounds;
  // Extra observer of every probe of every worker; must be thread safe.
  std::function<void(const FeatureVector&, const ProbeRecord&)> on_probe;
};

struct PortfolioResult {
  std::optional<FeatureVector> winner;
  // Value and witness in the model's own sense. Brackets always refer to
  // the minimized objective (negated when objective_negated).
  OptOutcome outcome;
  bool objective_negated = false;
  std::vector<WorkerRecord> workers;
  // Cross-check mode: disagreements between definitive outcomes.
  std::vector<std::string> conflicts;
  double wall_ms = 0;
  friend bool operator==(const PortfolioResult&, const PortfolioResult&) = default;
};

// Runs one vector against a minimization model. Errors become Unknown
// outcomes; nothing is thrown except for an invalid vector.
WorkerRecord run_worker(const Model& model, const FeatureVector& v, const PortfolioOptions& opt,
                        const CancelToken& cancel = {});

PortfolioResult run_portfolio(const Model& model, const std::vector<FeatureVector>& vectors,
                              const PortfolioOptions& opt);

// Log file of one vector under opt.log_dir.
std::filesystem::path worker_log_path(const std::filesystem::path& dir, std::string_view benchmark,
                                      const FeatureVector& v);

}  // namespace smtopt

#endif  // SMTOPT_PORTFOLIO_HPP_
