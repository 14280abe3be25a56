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

// Model-to-model transforms of the preprocessing layer: bit decomposition
// of bounded integer variables and the two flattening encodings.

#ifndef SMTOPT_PREPROCESS_HPP_
#define SMTOPT_PREPROCESS_HPP_

#include <utility>
#include <vector>

#include "smtopt/model.hpp"

namespace smtopt {

struct BinEntry {
  VarId var = 0;
  Rat lower;
  // b_1 .. b_q, least significant first. Empty for a fixed variable.
  std::vector<VarId> bits;
  friend bool operator==(const BinEntry&, const BinEntry&) = default;
};

using BinMap = std::vector<BinEntry>;

// 1 + ceil(log2(width)) for width >= 1, 0 for width == 0.
unsigned bit_count(const Rat& width);

// Replaces each Integer variable x in [l, u] by x = l + sum 2^(i-1) b_i over
// q = bit_count(u - l) new [0, 1] Integer bits; x turns Continuous and keeps
// its bounds. Binary variables are left alone. Fractional bounds are rounded
// inwards first.
// Throws Error(kUnboundedInteger) or Error(kEmptyIntegerRange).
std::pair<Model, BinMap> binarize(Model model);

// Adds (b = 0) or (b = 1) for every integer variable and makes it
// Continuous. Throws Error(kNotBinarized) unless every integer variable has
// bounds exactly [0, 1].
Model flatten_binarized(Model model);

constexpr unsigned kDefaultNaiveFlattenCap = 1024;

// Adds (x >= l) and (x <= u) plus (x <= i or x >= i + 1) for l <= i <= u,
// then makes x Continuous. Throws Error(kUnboundedInteger),
// Error(kEmptyIntegerRange) or Error(kRangeTooWide) when u - l > cap.
Model flatten_naive(Model model, unsigned cap = kDefaultNaiveFlattenCap);

}  // namespace smtopt

#endif  // SMTOPT_PREPROCESS_HPP_
