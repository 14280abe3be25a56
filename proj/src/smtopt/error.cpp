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

#include "smtopt/error.hpp"

namespace smtopt {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kMalformedNumber: return "MalformedNumber";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kNonRationalValue: return "NonRationalValue";
    case ErrorCode::kUnsupportedOperator: return "UnsupportedOperator";
    case ErrorCode::kMultipleObjectives: return "MultipleObjectives";
    case ErrorCode::kMalformedDocument: return "MalformedDocument";
    case ErrorCode::kInconsistentCounts: return "InconsistentCounts";
    case ErrorCode::kUnknownSection: return "UnknownSection";
    case ErrorCode::kDuplicateRow: return "DuplicateRow";
    case ErrorCode::kUnknownRowReference: return "UnknownRowReference";
    case ErrorCode::kMalformedField: return "MalformedField";
    case ErrorCode::kSpawnFailure: return "SpawnFailure";
    case ErrorCode::kHandshakeFailure: return "HandshakeFailure";
    case ErrorCode::kNonIntegerExponent: return "NonIntegerExponent";
    case ErrorCode::kExponentTooLarge: return "ExponentTooLarge";
    case ErrorCode::kSolverDied: return "SolverDied";
    case ErrorCode::kPopOnEmptyStack: return "PopOnEmptyStack";
    case ErrorCode::kProtocolError: return "ProtocolError";
    case ErrorCode::kCancelled: return "Cancelled";
    case ErrorCode::kTimeout: return "Timeout";
    case ErrorCode::kUnboundedInteger: return "UnboundedInteger";
    case ErrorCode::kEmptyIntegerRange: return "EmptyIntegerRange";
    case ErrorCode::kNotBinarized: return "NotBinarized";
    case ErrorCode::kRangeTooWide: return "RangeTooWide";
    case ErrorCode::kIntegerValue: return "IntegerValue";
    case ErrorCode::kInvalidVector: return "InvalidVector";
    case ErrorCode::kMissingLogs: return "MissingLogs";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kUnboundedVariable: return "UnboundedVariable";
  }
  return "Unknown";
}

}  // namespace smtopt
