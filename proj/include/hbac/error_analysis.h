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

#ifndef HBAC_ERROR_ANALYSIS_H
#define HBAC_ERROR_ANALYSIS_H

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hbac/bias.h"

namespace hbac {

/// Where the bit-flip noise acts relative to the 3-bit majority step.
/// AFTER: one channel on the output bit once the step is done.
/// DURING: channels at the seven noise sites of the CNOT/Toffoli circuit.
enum class NoiseModel { SYM_AFTER, SYM_DURING, ASYM_AFTER, ASYM_DURING };

enum class Approximation { EXACT, SECOND_ORDER };

std::string_view model_name(NoiseModel model);
/// Accepts "sym-after", "sym-during", "asym-after", "asym-during".
NoiseModel parse_model(std::string_view name);

Bias newbias_sym_after(Bias b, double eps);
double threshold_sym_after();
/// Zero at or above the threshold.
Bias blim_sym_after(double eps);
double blim_sym_after_second_order(double eps);

Bias newbias_sym_during(Bias b, double eps);
/// Error rate at which the improvement of a vanishing bias changes sign.
double threshold_sym_during();
/// Zero at or above the threshold.
Bias blim_sym_during(double eps);
double blim_sym_during_second_order(double eps);

Bias newbias_asym_after(Bias b, const ErrorRates &rates);
/// Positive root of B^3 (s-1) + B (1-3s) + 2d, by bisection. Needs s < 1/3.
Bias blim_asym_after(const ErrorRates &rates);
double blim_asym_after_second_order(const ErrorRates &rates);

/// EXACT runs the error-pattern enumeration; SECOND_ORDER evaluates the
/// polynomial truncation in (s, d). The truncation can leave [-1, 1] for
/// large rates, hence the plain double.
double newbias_asym_during(Bias b, const ErrorRates &rates, Approximation mode);
/// Largest root in [0, 1] of the cubic obtained from the second-order
/// update, capped at 1. Rejects s > 0.08.
Bias blim_asym_during(const ErrorRates &rates);
double blim_asym_during_second_order(const ErrorRates &rates);

/// Above this value of s the second-order during-step analysis is flagged.
constexpr double ASYM_DURING_SOFT_LIMIT = 0.04;
constexpr double ASYM_DURING_HARD_LIMIT = 0.08;

/// A bias update rule for one noisy 3-bit compression step.
struct BiasUpdateModel {
    NoiseModel label;
    ErrorRates rates;
    Approximation mode = Approximation::EXACT;

    BiasUpdateModel(NoiseModel label, ErrorRates rates, Approximation mode = Approximation::EXACT);

    /// All three inputs at bias b.
    double update(double b) const;
    /// Bias delivered to the bit that held b3. After-models use the
    /// unequal-bias majority followed by the channel; during-models put b3
    /// on the circuit's output wire and b1, b2 on the other two.
    double update_unequal(Bias b1, Bias b2, Bias b3) const;
};

/// Largest b in [0, 1] where update(b) - b changes from positive to
/// nonpositive, found by a downward scan and bisection. Zero if the map
/// never improves a bias.
double generic_limit(const std::function<double(double)> &update);

/// Smallest rate in [lo, hi] at which improvement(rate) stops being
/// positive, by bisection. Throws if improvement(lo) <= 0 or
/// improvement(hi) > 0.
double generic_threshold(const std::function<double(double)> &improvement, double lo, double hi);

struct LimitReport {
    NoiseModel model;
    ErrorRates rates;
    std::optional<double> threshold;
    bool above_threshold = false;
    Bias b_lim;
    double b_lim_second_order = 0.0;
    double gap = 0.0;
    /// Limit of the model's own update map (exact enumeration for the
    /// during-models), which need not equal b_lim when b_lim comes from a
    /// truncated polynomial.
    double b_lim_update_map = 0.0;
    std::vector<std::string> warnings;
};

LimitReport limit_report(const BiasUpdateModel &model);

struct SummaryRow {
    NoiseModel model;
    ErrorRates rates;
    /// "1/6", "0.048592" or "N/A".
    std::string threshold;
    std::string second_order_form;
    double b_lim;
    double b_lim_second_order;
};

/// One row per noise model; symmetric rows use eps, asymmetric rows (s, d).
std::vector<SummaryRow> summary_table(double eps, double s, double d);

}  // namespace hbac

#endif
