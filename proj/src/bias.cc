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

#include "hbac/bias.h"

#include <cmath>
#include <sstream>

namespace hbac {

namespace {

std::string describe(const char *what, double v) {
    std::ostringstream ss;
    ss.precision(17);
    ss << what << " = " << v;
    return ss.str();
}

}  // namespace

Bias::Bias(double value) : value_(value) {
    if (!(value >= -1.0 && value <= 1.0)) {
        throw DomainError(describe("bias outside [-1, 1]: b", value));
    }
}

Bias Bias::from_prob(double p0) {
    if (!(p0 >= 0.0 && p0 <= 1.0)) {
        throw DomainError(describe("probability outside [0, 1]: p", p0));
    }
    return Bias(2.0 * p0 - 1.0);
}

ErrorRates::ErrorRates(double eps0, double eps1) : eps0_(eps0), eps1_(eps1) {
    if (!(eps0 >= 0.0 && eps0 < 0.5)) {
        throw DomainError(describe("eps0 outside [0, 1/2): eps0", eps0));
    }
    if (!(eps1 >= 0.0 && eps1 < 0.5)) {
        throw DomainError(describe("eps1 outside [0, 1/2): eps1", eps1));
    }
}

ErrorRates ErrorRates::symmetric(double eps) {
    return ErrorRates(eps, eps);
}

ErrorRates ErrorRates::from_sum_difference(double s, double d) {
    if (!(std::abs(d) <= s)) {
        throw DomainError(describe("need |d| <= s; d", d));
    }
    return ErrorRates((s - d) / 2.0, (s + d) / 2.0);
}

Bias bias_from_prob(double p0) {
    return Bias::from_prob(p0);
}

Bias two_bc_accept_bias(Bias b) {
    double x = b.value();
    if (x < 0.0) {
        throw DomainError(describe("2-bit compression needs a nonnegative bias; b", x));
    }
    return Bias(2.0 * x / (1.0 + x * x));
}

double two_bc_accept_prob(Bias b) {
    double x = b.value();
    if (x < 0.0) {
        throw DomainError(describe("2-bit compression needs a nonnegative bias; b", x));
    }
    return (1.0 + x * x) / 2.0;
}

Bias three_bc_bias(Bias b) {
    double x = b.value();
    return Bias(1.5 * x - 0.5 * x * x * x);
}

Bias three_bc_bias_unequal(Bias b1, Bias b2, Bias b3) {
    double x = b1.value();
    double y = b2.value();
    double z = b3.value();
    return Bias((x + y + z - x * y * z) / 2.0);
}

Bias steady_state_bias(Bias ba, Bias bb) {
    double x = ba.value();
    double y = bb.value();
    if (x < 0.0 || y < 0.0) {
        throw DomainError("steady state needs nonnegative biases");
    }
    return Bias((x + y) / (1.0 + x * y));
}

Bias debias_step(Bias b, const ErrorRates &rates) {
    return Bias(b.value() * (1.0 - rates.s()) + rates.d());
}

Bias steady_state_bias_noisy(Bias ba, Bias bb, const ErrorRates &rates) {
    double x = ba.value();
    double y = bb.value();
    if (x < 0.0 || y < 0.0) {
        throw DomainError("steady state needs nonnegative biases");
    }
    double s = rates.s();
    double d = rates.d();
    return Bias(((x + y) * (1.0 - s) + 2.0 * d) / (1.0 + x * y * (1.0 - s) + s));
}

std::uint64_t fibonacci(unsigned n) {
    if (n == 0) {
        throw DomainError("fibonacci index must be >= 1");
    }
    if (n > 93) {
        throw DomainError("fibonacci index > 93 overflows 64 bits");
    }
    std::uint64_t prev = 0;
    std::uint64_t cur = 1;
    for (unsigned k = 1; k < n; k++) {
        std::uint64_t next = prev + cur;
        prev = cur;
        cur = next;
    }
    return cur;
}

FixedPoint iterate_to_fixed_point(
    const std::function<double(double)> &map, double start, double tol, std::size_t max_iterations) {
    double x = start;
    for (std::size_t k = 1; k <= max_iterations; k++) {
        double next = map(x);
        if (std::abs(next - x) < tol) {
            return {next, k};
        }
        x = next;
    }
    throw DomainError("fixed-point iteration did not converge");
}

}  // namespace hbac
