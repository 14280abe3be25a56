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

#ifndef SMTOPT_ERROR_HPP_
#define SMTOPT_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace smtopt {

enum class ErrorCode {
  kInvalidArgument,
  kMalformedNumber,
  kIo,
  // core_model
  kDivisionByZero,
  kNonRationalValue,
  // osil
  kUnsupportedOperator,
  kMultipleObjectives,
  kMalformedDocument,
  kInconsistentCounts,
  // mps
  kUnknownSection,
  kDuplicateRow,
  kUnknownRowReference,
  kMalformedField,
  // smt
  kSpawnFailure,
  kHandshakeFailure,
  kNonIntegerExponent,
  kExponentTooLarge,
  kSolverDied,
  kPopOnEmptyStack,
  kProtocolError,
  kCancelled,
  kTimeout,
  // preprocess
  kUnboundedInteger,
  kEmptyIntegerRange,
  kNotBinarized,
  kRangeTooWide,
  // integrality
  kIntegerValue,
  // portfolio / cli
  kInvalidVector,
  kMissingLogs,
  // oracle
  kTooLarge,
  kUnboundedVariable,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace smtopt

#endif  // SMTOPT_ERROR_HPP_
