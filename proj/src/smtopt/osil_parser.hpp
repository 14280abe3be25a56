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

#ifndef SMTOPT_OSIL_PARSER_HPP_
#define SMTOPT_OSIL_PARSER_HPP_

#include <string_view>

#include "smtopt/model.hpp"

namespace smtopt {

struct OsilOptions {
  // The OSiL schema default lower bound is 0. Some corpora assume free
  // variables instead; this flag switches the default to -inf.
  bool free_default_lower_bound = false;
};

// Parses the subset of OSiL used by polynomial + exp models: variables,
// a single objective, constraint rows, the sparse linear coefficient matrix
// (column- or row-major), quadratic terms and nonlinear expression trees.
// Anything outside that subset is rejected with an Error.
Model parse_osil(std::string_view xml, const OsilOptions& options = {});

enum class VectorSetHint { kMinlpVectors, kNlpVectors };

struct ClassDetection {
  ProblemClass problem_class;
  VectorSetHint hint;
};

ClassDetection detect_class_and_vector_set(const Model& model);

}  // namespace smtopt

#endif  // SMTOPT_OSIL_PARSER_HPP_
