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

// Brute-force reference solver for tiny bounded models: full enumeration of
// the integer variables and a grid over at most two continuous ones.

#ifndef SMTOPT_ORACLE_HPP_
#define SMTOPT_ORACLE_HPP_

#include "smtopt/cr_opt.hpp"
#include "smtopt/model.hpp"

namespace smtopt {

struct OracleOptions {
  Rat grid{1, 100};
  // Constraint tolerance at grid points is grid * lipschitz.
  Rat lipschitz = 0;
};

struct OracleResult {
  // Optimal (value in the model's own sense, witness, no bracket) or
  // Infeasible.
  OptOutcome outcome;
  Rat tolerance;
  std::size_t points = 0;
};

// Throws Error(kUnboundedVariable), Error(kTooLarge) or
// Error(kInvalidArgument) for models with exp.
OracleResult brute_force(const Model& model, const OracleOptions& opt = {});

}  // namespace smtopt

#endif  // SMTOPT_ORACLE_HPP_
