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

#include "hbac/json_io.h"

#include <cmath>
#include <cstdio>

namespace hbac {

namespace {

void write(const nlohmann::json &v, std::string &out) {
    switch (v.type()) {
        case nlohmann::json::value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (!first) {
                    out += ',';
                }
                first = false;
                out += nlohmann::json(it.key()).dump();
                out += ':';
                write(it.value(), out);
            }
            out += '}';
            break;
        }
        case nlohmann::json::value_t::array: {
            out += '[';
            bool first = true;
            for (const auto &e : v) {
                if (!first) {
                    out += ',';
                }
                first = false;
                write(e, out);
            }
            out += ']';
            break;
        }
        case nlohmann::json::value_t::number_float: {
            double x = v.get<double>();
            out += std::isfinite(x) ? format_double(x) : "null";
            break;
        }
        default:
            out += v.dump();
    }
}

}  // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string dump_json(const nlohmann::json &value) {
    std::string out;
    write(value, out);
    return out;
}

nlohmann::json to_json(const ErrorRates &rates) {
    return {{"eps0", rates.eps0()}, {"eps1", rates.eps1()}, {"s", rates.s()}, {"d", rates.d()}};
}

nlohmann::json to_json(const CostLedger &ledger) {
    return {
        {"bits_consumed", ledger.bits_consumed},
        {"three_bc_ops", ledger.three_bc_ops},
        {"heat_bath_contacts", ledger.heat_bath_contacts},
        {"recursion_depth", ledger.recursion_depth},
        {"saturated", ledger.saturated},
    };
}

nlohmann::json to_json(const TraceStep &step) {
    return {
        {"step", step.step},
        {"op", step.op},
        {"positions", step.positions},
        {"biases_after", step.biases_after},
        {"ledger", to_json(step.ledger)},
    };
}

nlohmann::json to_json(const CoolingResult &result) {
    return {
        {"final_bias", result.final_bias.value()},
        {"levels", result.levels},
        {"bits", result.bits},
        {"bits_ceil", result.bits_ceil},
        {"working_register", result.working_register},
        {"reached_target", result.reached_target},
        {"sequence", result.sequence},
        {"ledger", to_json(result.ledger)},
    };
}

nlohmann::json to_json(const LimitReport &report) {
    nlohmann::json j = {
        {"model", std::string(model_name(report.model))},
        {"rates", to_json(report.rates)},
        {"threshold", nullptr},
        {"above_threshold", report.above_threshold},
        {"b_lim", report.b_lim.value()},
        {"second_order", report.b_lim_second_order},
        {"gap", report.gap},
        {"b_lim_update_map", report.b_lim_update_map},
        {"warnings", report.warnings},
    };
    if (report.threshold) {
        j["threshold"] = *report.threshold;
    }
    return j;
}

nlohmann::json to_json(const SummaryRow &row) {
    return {
        {"model", std::string(model_name(row.model))},
        {"rates", to_json(row.rates)},
        {"threshold", row.threshold},
        {"second_order_form", row.second_order_form},
        {"b_lim", row.b_lim},
        {"second_order", row.b_lim_second_order},
    };
}

std::string trace_jsonl(const std::vector<TraceStep> &trace) {
    std::string out;
    for (const auto &step : trace) {
        out += dump_json(to_json(step));
        out += '\n';
    }
    return out;
}

}  // namespace hbac
