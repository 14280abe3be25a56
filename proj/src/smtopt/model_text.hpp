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

// Line-oriented debug text form of a Model. One record per line:
//
//   model "name" negated=0|1
//   var "x" C|I|B <lb|-inf> <ub|inf>
//   obj min|max <constant> <expr>
//   con "name" <origin> <lb|-inf> <ub|inf> <expr>
//   dis <origin> <atom> <atom> ...        atom = (<=|>=|= <expr> <expr>)
//
// Expressions are prefix s-expressions: rationals, #id for variables,
// (+ ...), (neg a), (* ...), (- a b), (/ a b), (^ a b), (exp a).

#ifndef SMTOPT_MODEL_TEXT_HPP_
#define SMTOPT_MODEL_TEXT_HPP_

#include <string>
#include <string_view>

#include "smtopt/model.hpp"

namespace smtopt {

std::string expr_to_text(const Expr& e);
std::string model_to_text(const Model& model);
Model model_from_text(std::string_view text);

}  // namespace smtopt

#endif  // SMTOPT_MODEL_TEXT_HPP_
