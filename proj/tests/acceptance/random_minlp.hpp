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


// Seeded generator of tiny bounded MINLPs with a brute-force friendly shape,
// plus the perturbation bounds the oracle comparison needs.

#ifndef SMTOPT_TESTS_RANDOM_MINLP_HPP_
#define SMTOPT_TESTS_RANDOM_MINLP_HPP_

#include <cstdint>
#include <random>

#include "smtopt/model.hpp"

namespace smtopt::testing {

struct RandomShape {
  int max_ints = 3;
  int max_width = 8;
  int max_conts = 2;
  // Probability of an integrality-infeasible row (relaxation stays feasible).
  double infeasible_rate = 0.15;
};

struct RandomInstance {
  Model model;
  // Largest change of the objective / of any constraint body when every
  // continuous variable moves by at most grid / 2.
  Rat objective_slack;
  Rat constraint_slack;
};

// Minimization, polynomial degree <= 2, continuous ranges of width 2.
RandomInstance random_minlp(std::mt19937& rng, const RandomShape& shape, const Rat& grid);

// Sum over integer variables of floor(u) - ceil(l).
Rat integer_width_sum(const Model& model);

}  // namespace smtopt::testing

#endif  // SMTOPT_TESTS_RANDOM_MINLP_HPP_
