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

#include "hbac/error_analysis.h"

#include <array>
#include <cmath>

#include "hbac/enumeration.h"
#include "hbac/majority.h"
#include "hbac/root_finding.h"

namespace hbac {

namespace {

void require_nonnegative_d(const ErrorRates &rates) {
    if (rates.d() < 0.0) {
        throw DomainError("asymmetric models need eps1 >= eps0 (d >= 0)");
    }
}

double cube(double x) {
    return x * x * x;
}

// Bias a vanishing input gains per unit bias under the during-step noise,
// minus one; its root is the threshold.
double sym_during_small_bias_gain(double eps) {
    return -2.0 + cube(1.0 - 2.0 * eps) * (3.0 - 6.0 * eps + 4.0 * eps * eps);
}

// Coefficients of 2 (B' - B) for the second-order during-step update,
// constant term first.
std::array<double, 4> asym_during_cubic(const ErrorRates &rates) {
    double s = rates.s();
    double d = rates.d();
    return {
        5.0 * d + 4.0 * d * d - 6.0 * s * d,
        1.0 - 12.0 * s + 19.0 * s * s - d * d + 4.0 * d * s,
        d,
        -1.0 + 6.0 * s - 15.0 * s * s,
    };
}

const Circuit &noisy_majority() {
    static const Circuit circuit = majority_circuit_cnot_toffoli();
    return circuit;
}

}  // namespace

std::string_view model_name(NoiseModel model) {
    switch (model) {
        case NoiseModel::SYM_AFTER:
            return "sym-after";
        case NoiseModel::SYM_DURING:
            return "sym-during";
        case NoiseModel::ASYM_AFTER:
            return "asym-after";
        case NoiseModel::ASYM_DURING:
            return "asym-during";
    }
    return "?";
}

NoiseModel parse_model(std::string_view name) {
    for (auto m : {NoiseModel::SYM_AFTER, NoiseModel::SYM_DURING, NoiseModel::ASYM_AFTER, NoiseModel::ASYM_DURING}) {
        if (model_name(m) == name) {
            return m;
        }
    }
    throw DomainError("unknown noise model: " + std::string(name));
}

Bias newbias_sym_after(Bias b, double eps) {
    ErrorRates rates = ErrorRates::symmetric(eps);
    return Bias(three_bc_bias(b).value() * (1.0 - rates.s()));
}

double threshold_sym_after() {
    return 1.0 / 6.0;
}

Bias blim_sym_after(double eps) {
    ErrorRates::symmetric(eps);
    if (eps >= threshold_sym_after()) {
        return Bias(0.0);
    }
    return Bias(std::sqrt((1.0 - 6.0 * eps) / (1.0 - 2.0 * eps)));
}

double blim_sym_after_second_order(double eps) {
    return 1.0 - 2.0 * eps - 6.0 * eps * eps;
}

Bias newbias_sym_during(Bias b, double eps) {
    ErrorRates::symmetric(eps);
    double x = b.value();
    double k = cube(1.0 - 2.0 * eps);
    return Bias(0.5 * x * k * (3.0 - 6.0 * eps + 4.0 * eps * eps - x * x * k));
}

double threshold_sym_during() {
    static const double root = bisect_root(sym_during_small_bias_gain, 0.0, 0.5, 1e-15);
    return root;
}

Bias blim_sym_during(double eps) {
    ErrorRates::symmetric(eps);
    if (eps >= threshold_sym_during()) {
        return Bias(0.0);
    }
    double e2 = eps * eps;
    double radicand = 1.0 - 24.0 * eps + 76.0 * e2 - 120.0 * e2 * eps + 96.0 * e2 * e2 - 32.0 * e2 * e2 * eps;
    if (radicand <= 0.0) {
        return Bias(0.0);
    }
    return Bias(std::min(1.0, std::sqrt(radicand) / cube(1.0 - 2.0 * eps)));
}

double blim_sym_during_second_order(double eps) {
    return 1.0 - 6.0 * eps - 82.0 * eps * eps;
}

Bias newbias_asym_after(Bias b, const ErrorRates &rates) {
    require_nonnegative_d(rates);
    return Bias(three_bc_bias(b).value() * (1.0 - rates.s()) + rates.d());
}

Bias blim_asym_after(const ErrorRates &rates) {
    require_nonnegative_d(rates);
    double s = rates.s();
    double d = rates.d();
    if (s >= 1.0 / 3.0) {
        throw DomainError("after-step limit needs s < 1/3");
    }
    if (s == 0.0) {
        return Bias(1.0);
    }
    auto f = [&](double x) { return cube(x) * (s - 1.0) + x * (1.0 - 3.0 * s) + 2.0 * d; };
    // f > 0 just above 0 (from 2d, or from the linear term when d = 0) and
    // f(1) = 2(d - s) <= 0.
    return Bias(std::min(1.0, bisect_root(f, 1e-9, 1.0)));
}

double blim_asym_after_second_order(const ErrorRates &rates) {
    double s = rates.s();
    double d = rates.d();
    return 1.0 - s + d - 1.5 * s * s - 1.5 * d * d + 3.0 * d * s;
}

double newbias_asym_during(Bias b, const ErrorRates &rates, Approximation mode) {
    require_nonnegative_d(rates);
    if (mode == Approximation::EXACT) {
        return enumerate_noisy_output_bias(noisy_majority(), b, rates, WIRE_A).value();
    }
    auto c = asym_during_cubic(rates);
    double x = b.value();
    // The cubic is 2 (B' - B), so add the B back.
    return 0.5 * (c[0] + (c[1] + 2.0) * x + c[2] * x * x + c[3] * x * x * x);
}

Bias blim_asym_during(const ErrorRates &rates) {
    require_nonnegative_d(rates);
    if (rates.s() > ASYM_DURING_HARD_LIMIT) {
        throw DomainError("during-step limit is only defined for s <= 0.08");
    }
    if (rates.s() == 0.0) {
        return Bias(1.0);
    }
    auto c = asym_during_cubic(rates);
    auto f = [&](double x) { return c[0] + x * (c[1] + x * (c[2] + x * c[3])); };
    return Bias(largest_descending_root(f, 0.0, 1.0));
}

double blim_asym_during_second_order(const ErrorRates &rates) {
    double s = rates.s();
    double d = rates.d();
    return 1.0 - 3.0 * s + 3.0 * d - 9.0 * d * d - 20.5 * s * s + 32.0 * d * s;
}

BiasUpdateModel::BiasUpdateModel(NoiseModel label, ErrorRates rates, Approximation mode)
    : label(label), rates(rates), mode(mode) {
    bool symmetric_model = label == NoiseModel::SYM_AFTER || label == NoiseModel::SYM_DURING;
    if (symmetric_model && !rates.is_symmetric()) {
        throw DomainError(std::string(model_name(label)) + " needs eps0 == eps1");
    }
    if (!symmetric_model) {
        require_nonnegative_d(rates);
    }
}

double BiasUpdateModel::update(double b) const {
    Bias in(b);
    switch (label) {
        case NoiseModel::SYM_AFTER:
            return newbias_sym_after(in, rates.eps0()).value();
        case NoiseModel::SYM_DURING:
            if (mode == Approximation::EXACT) {
                return newbias_sym_during(in, rates.eps0()).value();
            }
            return newbias_asym_during(in, rates, mode);
        case NoiseModel::ASYM_AFTER:
            return newbias_asym_after(in, rates).value();
        case NoiseModel::ASYM_DURING:
            return newbias_asym_during(in, rates, mode);
    }
    return b;
}

double BiasUpdateModel::update_unequal(Bias b1, Bias b2, Bias b3) const {
    switch (label) {
        case NoiseModel::SYM_AFTER:
        case NoiseModel::ASYM_AFTER:
            return three_bc_bias_unequal(b1, b2, b3).value() * (1.0 - rates.s()) + rates.d();
        case NoiseModel::SYM_DURING:
        case NoiseModel::ASYM_DURING:
            if (b1 == b2 && b2 == b3) {
                return update(b3.value());
            }
            if (mode != Approximation::EXACT) {
                throw DomainError("second-order during-step update needs equal input biases");
            }
            {
                std::array<Bias, 3> wires{};
                wires[WIRE_A] = b3;
                wires[WIRE_B] = b1;
                wires[WIRE_C] = b2;
                return enumerate_noisy_output_bias(noisy_majority(), wires, rates, WIRE_A).value();
            }
    }
    return b3.value();
}

double generic_limit(const std::function<double(double)> &update) {
    return largest_descending_root([&](double b) { return update(b) - b; }, 0.0, 1.0);
}

double generic_threshold(const std::function<double(double)> &improvement, double lo, double hi) {
    if (!(improvement(lo) > 0.0) || improvement(hi) > 0.0) {
        throw DomainError("improvement does not change sign on the rate interval");
    }
    // Nudge zeros to the nonimproving side.
    return bisect_root([&](double r) { return improvement(r) > 0.0 ? 1.0 : -1.0; }, lo, hi, 1e-14);
}

LimitReport limit_report(const BiasUpdateModel &model) {
    LimitReport r{model.label, model.rates, std::nullopt, false, Bias(0.0), 0.0, 0.0, 0.0, {}};
    double eps = model.rates.eps0();
    switch (model.label) {
        case NoiseModel::SYM_AFTER:
            r.threshold = threshold_sym_after();
            r.b_lim = blim_sym_after(eps);
            r.b_lim_second_order = blim_sym_after_second_order(eps);
            break;
        case NoiseModel::SYM_DURING:
            r.threshold = threshold_sym_during();
            r.b_lim = blim_sym_during(eps);
            r.b_lim_second_order = blim_sym_during_second_order(eps);
            break;
        case NoiseModel::ASYM_AFTER:
            r.b_lim = blim_asym_after(model.rates);
            r.b_lim_second_order = blim_asym_after_second_order(model.rates);
            break;
        case NoiseModel::ASYM_DURING:
            if (model.rates.s() > ASYM_DURING_SOFT_LIMIT) {
                r.warnings.push_back("s > 0.04: second-order during-step analysis is outside its validity region");
            }
            r.b_lim = blim_asym_during(model.rates);
            r.b_lim_second_order = blim_asym_during_second_order(model.rates);
            break;
    }
    if (r.threshold && eps >= *r.threshold) {
        r.above_threshold = true;
        r.warnings.push_back("error rate at or above threshold: no positive bias is improved");
    }
    r.gap = std::abs(r.b_lim.value() - r.b_lim_second_order);
    r.b_lim_update_map = generic_limit([&](double b) { return model.update(b); });
    return r;
}

std::vector<SummaryRow> summary_table(double eps, double s, double d) {
    ErrorRates sym = ErrorRates::symmetric(eps);
    ErrorRates asym = ErrorRates::from_sum_difference(s, d);
    std::vector<SummaryRow> rows;
    rows.push_back({NoiseModel::SYM_AFTER, sym, "1/6", "1 - 2e - 6e^2", blim_sym_after(eps).value(),
                    blim_sym_after_second_order(eps)});
    rows.push_back({NoiseModel::SYM_DURING, sym, "0.048592", "1 - 6e - 82e^2", blim_sym_during(eps).value(),
                    blim_sym_during_second_order(eps)});
    rows.push_back({NoiseModel::ASYM_AFTER, asym, "N/A", "1 - s + d - 3/2 s^2 - 3/2 d^2 + 3ds",
                    blim_asym_after(asym).value(), blim_asym_after_second_order(asym)});
    rows.push_back({NoiseModel::ASYM_DURING, asym, "N/A", "1 - 3s + 3d - 9d^2 - 41/2 s^2 + 32ds",
                    blim_asym_during(asym).value(), blim_asym_during_second_order(asym)});
    return rows;
}

}  // namespace hbac
