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


#include "smtopt/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string_view>

#include "smtopt/error.hpp"
#include "smtopt/json_io.hpp"

namespace smtopt {

namespace {

// Column order: table families first, then methods in ubs/naive/hybrid order.
int column_rank(const std::string& name) {
  static const char* kMethods[] = {"ubs", "naive", "hybrid"};
  int rank = 0;
  for (const auto& f : families()) {
    for (const char* m : kMethods) {
      if (name == std::string(f.name) + "-" + m) return rank;
      ++rank;
    }
  }
  return rank;
}

std::string cell_for(const Json& result) {
  const Json& outcome = result.at("outcome");
  const std::string status = outcome.at("status").get<std::string>();
  if (status == "Optimal" || status == "Infeasible") {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", result.at("wall_ms").get<double>() / 1000.0);
    return buf;
  }
  if (result.value("cancelled", false)) return "cancelled";
  if (status == "BoundExceeded") return "unbounded";
  if (outcome.at("reason").get<std::string>() == "timeout") return "timeout";
  return "unknown";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

ReportTable load_report(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) throw Error(ErrorCode::kMissingLogs, dir.string());

  std::map<std::string, std::map<std::string, std::string>> grid;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    std::ifstream in(path);
    std::string line;
    std::string benchmark;
    std::string vector;
    std::string cell;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      Json j = Json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.is_object()) continue;
      const std::string type = j.value("type", "");
      try {
        if (type == "start") {
          benchmark = j.at("benchmark").get<std::string>();
          vector = j.at("vector").get<std::string>();
        } else if (type == "result") {
          cell = cell_for(j);
        }
      } catch (const Json::exception&) {
        continue;
      }
    }
    if (benchmark.empty() || vector.empty()) continue;
    // A log without a result line belongs to a worker that never finished.
    grid[benchmark][vector] = cell.empty() ? "unknown" : cell;
  }
  if (grid.empty()) throw Error(ErrorCode::kMissingLogs, "no worker logs in " + dir.string());

  ReportTable t;
  for (const auto& [bench, row] : grid) {
    t.benchmarks.push_back(bench);
    for (const auto& [vec, cell] : row) {
      if (std::find(t.columns.begin(), t.columns.end(), vec) == t.columns.end()) t.columns.push_back(vec);
    }
  }
  std::stable_sort(t.columns.begin(), t.columns.end(),
                   [](const std::string& a, const std::string& b) { return column_rank(a) < column_rank(b); });
  for (const auto& bench : t.benchmarks) {
    std::vector<std::string> row;
    for (const auto& col : t.columns) {
      auto it = grid[bench].find(col);
      row.push_back(it == grid[bench].end() ? "" : it->second);
    }
    t.cells.push_back(std::move(row));
  }
  // Integer-free runs only have nobb vectors; label them by method.
  if (std::all_of(t.columns.begin(), t.columns.end(),
                  [](const std::string& c) { return c.rfind("nobb-", 0) == 0; })) {
    for (auto& c : t.columns) {
      if (c == "nobb-ubs") c = "U.B.S";
      else if (c == "nobb-naive") c = "Naive";
      else if (c == "nobb-hybrid") c = "Hybrid";
    }
  }
  return t;
}

std::string render_text(const ReportTable& t) {
  std::vector<size_t> width(t.columns.size() + 1, 9);
  for (const auto& b : t.benchmarks) width[0] = std::max(width[0], b.size());
  for (size_t c = 0; c < t.columns.size(); ++c) {
    width[c + 1] = std::max(width[c + 1], t.columns[c].size());
    for (const auto& row : t.cells) width[c + 1] = std::max(width[c + 1], row[c].size());
  }
  std::ostringstream out;
  auto pad = [&](const std::string& s, size_t w, bool right) {
    std::string fill(w > s.size() ? w - s.size() : 0, ' ');
    out << (right ? fill + s : s + fill);
  };
  pad("benchmark", width[0], false);
  for (size_t c = 0; c < t.columns.size(); ++c) {
    out << "  ";
    pad(t.columns[c], width[c + 1], true);
  }
  out << '\n';
  for (size_t r = 0; r < t.benchmarks.size(); ++r) {
    pad(t.benchmarks[r], width[0], false);
    for (size_t c = 0; c < t.columns.size(); ++c) {
      out << "  ";
      pad(t.cells[r][c].empty() ? "-" : t.cells[r][c], width[c + 1], true);
    }
    out << '\n';
  }
  return out.str();
}

std::string render_csv(const ReportTable& t) {
  std::ostringstream out;
  out << "benchmark";
  for (const auto& c : t.columns) out << ',' << csv_field(c);
  out << '\n';
  for (size_t r = 0; r < t.benchmarks.size(); ++r) {
    out << csv_field(t.benchmarks[r]);
    for (const auto& cell : t.cells[r]) out << ',' << csv_field(cell);
    out << '\n';
  }
  return out.str();
}

}  // namespace smtopt
