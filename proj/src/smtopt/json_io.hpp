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

// JSON forms of results, worker records and probe logs. Rationals are
// strings "p" or "p/q" so nothing is lost.

#ifndef SMTOPT_JSON_IO_HPP_
#define SMTOPT_JSON_IO_HPP_

#include <string>
#include <string_view>

#include "json.hpp"
#include "smtopt/cr_opt.hpp"
#include "smtopt/portfolio.hpp"

namespace smtopt {

using Json = nlohmann::json;

Json encode(const Rat& r);
Json encode(const OptOutcome& o);
Json encode(const SolverConfig& c);
Json encode(const FeatureVector& v);
Json encode(const WorkerRecord& w);
Json encode(const PortfolioResult& r);
Json encode(const ProbeRecord& p);

// Throw Error(kMalformedDocument) on shape errors.
Rat decode_rat(const Json& j);
OptOutcome decode_outcome(const Json& j);
SolverConfig decode_solver(const Json& j);
FeatureVector decode_vector(const Json& j);
WorkerRecord decode_worker(const Json& j);
PortfolioResult decode_result(const Json& j);

std::string_view sat_status_name(SatStatus s);

}  // namespace smtopt

#endif  // SMTOPT_JSON_IO_HPP_
