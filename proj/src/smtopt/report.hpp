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

// Benchmark x vector runtime grid built from per-worker JSONL logs.

#ifndef SMTOPT_REPORT_HPP_
#define SMTOPT_REPORT_HPP_

#include <filesystem>
#include <string>
#include <vector>

namespace smtopt {

struct ReportTable {
  std::vector<std::string> benchmarks;
  std::vector<std::string> columns;
  // cells[benchmark][column]: seconds for definitive results, otherwise
  // "timeout", "unknown", "unbounded", "cancelled", or "" when no log.
  std::vector<std::vector<std::string>> cells;
};

// Throws Error(kMissingLogs) when `dir` holds no usable *.jsonl log.
ReportTable load_report(const std::filesystem::path& dir);

std::string render_text(const ReportTable& t);
std::string render_csv(const ReportTable& t);

}  // namespace smtopt

#endif  // SMTOPT_REPORT_HPP_
