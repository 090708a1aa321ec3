// Copyright 2026 The hbac Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HBAC_JSON_IO_H
#define HBAC_JSON_IO_H

#include <string>
#include <vector>

#include "json.hpp"

#include "hbac/cooling.h"
#include "hbac/error_analysis.h"

namespace hbac {

/// Compact JSON with every floating-point number written as %.17g.
/// Non-finite numbers become null.
std::string dump_json(const nlohmann::json &value);

/// %.17g, the number format used by every machine-readable output.
std::string format_double(double x);

nlohmann::json to_json(const ErrorRates &rates);
nlohmann::json to_json(const CostLedger &ledger);
nlohmann::json to_json(const TraceStep &step);
/// Everything except the trace.
nlohmann::json to_json(const CoolingResult &result);
nlohmann::json to_json(const LimitReport &report);
nlohmann::json to_json(const SummaryRow &row);

/// One JSON object per line.
std::string trace_jsonl(const std::vector<TraceStep> &trace);

}  // namespace hbac

#endif
