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

#ifndef SMTOPT_MPS_PARSER_HPP_
#define SMTOPT_MPS_PARSER_HPP_

#include <string_view>

#include "smtopt/model.hpp"

namespace smtopt {

// Reads a linear model in MPS format. Sections NAME, OBJSENSE, ROWS, COLUMNS
// (with INTORG/INTEND markers), RHS, RANGES, BOUNDS and ENDATA are
// understood. Lines are split on whitespace; when the field count does not
// fit the section the fixed-column layout is tried instead.
Model parse_mps(std::string_view text);

}  // namespace smtopt

#endif  // SMTOPT_MPS_PARSER_HPP_
