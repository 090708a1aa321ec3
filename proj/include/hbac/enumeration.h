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

#ifndef HBAC_ENUMERATION_H
#define HBAC_ENUMERATION_H

#include <span>
#include <vector>

#include "hbac/bias.h"
#include "hbac/circuit.h"

namespace hbac {

/// Upper bound on register width plus noise-site count for tuple enumeration.
constexpr std::size_t MAX_ENUMERATION_BITS = 26;

/// Which of a circuit's noise sites flipped. Bit k of `index` is e_{k+1}.
struct ErrorPattern {
    std::uint64_t index;
    std::size_t sites;

    bool flipped(std::size_t site) const {
        return (index >> site) & 1;
    }
    std::size_t weight() const;
    /// Probability of this pattern when every site flips independently with
    /// probability eps.
    double symmetric_probability(double eps) const;
};

/// Exact bias of `output_bit` after running `circuit` on independent input
/// bits with the given biases, where every noise site applies the
/// asymmetric bit-flip channel. Sums the probability of every
/// (input state, error pattern) tuple whose final output bit is 0; a flip
/// at a site is weighted by eps0 or eps1 according to the value the bit
/// holds just before the site.
Bias enumerate_noisy_output_bias(
    const Circuit &circuit, std::span<const Bias> input_biases, const ErrorRates &rates, std::size_t output_bit = 0);

/// Same, with every input bit at bias `input_bias`.
Bias enumerate_noisy_output_bias(
    const Circuit &circuit, Bias input_bias, const ErrorRates &rates, std::size_t output_bit = 0);

}  // namespace hbac

#endif
