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

#ifndef HBAC_BIAS_H
#define HBAC_BIAS_H

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace hbac {

/// Raised whenever an argument lies outside the domain of an operation.
/// Values are never clamped silently.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Polarization of a classical bit: P(bit = 0) - P(bit = 1), in [-1, 1].
class Bias {
   public:
    constexpr Bias() = default;
    explicit Bias(double value);

    static Bias from_prob(double p0);

    double value() const {
        return value_;
    }
    /// Probability that the bit equals 0.
    double prob0() const {
        return (1.0 + value_) / 2.0;
    }

    friend bool operator==(Bias, Bias) = default;
    friend auto operator<=>(Bias, Bias) = default;

   private:
    double value_ = 0.0;
};

/// Asymmetric bit-flip rates: eps0 is the 0->1 flip probability, eps1 the
/// 1->0 flip probability. Both must lie in [0, 1/2).
class ErrorRates {
   public:
    constexpr ErrorRates() = default;
    ErrorRates(double eps0, double eps1);

    static ErrorRates symmetric(double eps);
    /// Builds rates from s = eps0 + eps1 and d = eps1 - eps0.
    static ErrorRates from_sum_difference(double s, double d);

    double eps0() const {
        return eps0_;
    }
    double eps1() const {
        return eps1_;
    }
    double s() const {
        return eps0_ + eps1_;
    }
    double d() const {
        return eps1_ - eps0_;
    }
    bool is_symmetric() const {
        return eps0_ == eps1_;
    }
    bool is_noiseless() const {
        return eps0_ == 0.0 && eps1_ == 0.0;
    }

   private:
    double eps0_ = 0.0;
    double eps1_ = 0.0;
};

Bias bias_from_prob(double p0);

/// Bias of the control bit of a 2-bit compression step on the accepted
/// branch (target reads 0 after the CNOT).
Bias two_bc_accept_bias(Bias b);
/// Probability that the 2-bit compression step accepts its control bit.
double two_bc_accept_prob(Bias b);

/// Bias of the majority of three independent bits of equal bias.
Bias three_bc_bias(Bias b);
/// Bias of the majority of three independent bits with individual biases.
Bias three_bc_bias_unequal(Bias b1, Bias b2, Bias b3);

/// Limit of repeatedly computing the majority of (ba, bb, x) into x.
Bias steady_state_bias(Bias ba, Bias bb);

/// One application of the asymmetric bit-flip channel.
Bias debias_step(Bias b, const ErrorRates &rates);

/// Limit of repeatedly computing the majority of (ba, bb, x) into x and then
/// passing x through the bit-flip channel.
Bias steady_state_bias_noisy(Bias ba, Bias bb, const ErrorRates &rates);

/// Fibonacci numbers with F(1) = F(2) = 1. Exact for n <= 93.
std::uint64_t fibonacci(unsigned n);

struct FixedPoint {
    double value;
    std::size_t iterations;
};

/// Iterates x <- map(x) until |dx| < tol. Throws DomainError after
/// max_iterations without convergence.
FixedPoint iterate_to_fixed_point(
    const std::function<double(double)> &map,
    double start,
    double tol = 1e-12,
    std::size_t max_iterations = 1000000);

}  // namespace hbac

#endif
