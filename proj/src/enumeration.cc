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

#include "hbac/enumeration.h"

#include <algorithm>
#include <bit>
#include <cmath>

namespace hbac {

std::size_t ErrorPattern::weight() const {
    return static_cast<std::size_t>(std::popcount(index));
}

double ErrorPattern::symmetric_probability(double eps) const {
    auto flips = static_cast<int>(weight());
    return std::pow(eps, flips) * std::pow(1.0 - eps, static_cast<int>(sites) - flips);
}

Bias enumerate_noisy_output_bias(
    const Circuit &circuit, std::span<const Bias> input_biases, const ErrorRates &rates, std::size_t output_bit) {
    circuit.validate();
    if (input_biases.size() != circuit.width) {
        throw DomainError("need one input bias per circuit wire");
    }
    if (output_bit >= circuit.width) {
        throw DomainError("output bit outside the circuit");
    }
    std::size_t n = circuit.width;
    std::size_t k = circuit.noise_sites.size();
    if (n + k > MAX_ENUMERATION_BITS) {
        throw DomainError("too many (input, error pattern) tuples to enumerate");
    }

    // Sites grouped by the gate they follow, in listing order.
    std::vector<std::vector<std::size_t>> sites_after(circuit.gates.size());
    for (std::size_t s = 0; s < k; s++) {
        sites_after[circuit.noise_sites[s].after_gate].push_back(s);
    }
    const double flip[2] = {rates.eps0(), rates.eps1()};

    double p0 = 0.0;
    for (BasisState input = 0; input < (BasisState{1} << n); input++) {
        double w_input = 1.0;
        for (std::size_t bit = 0; bit < n; bit++) {
            double p = input_biases[bit].prob0();
            w_input *= ((input >> bit) & 1) ? 1.0 - p : p;
        }
        if (w_input == 0.0) {
            continue;
        }
        for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << k); pattern++) {
            double w = w_input;
            BasisState state = input;
            for (std::size_t g = 0; g < circuit.gates.size(); g++) {
                state = circuit.gates[g].apply(state);
                for (std::size_t s : sites_after[g]) {
                    BasisState mask = BasisState{1} << circuit.noise_sites[s].bit;
                    double e = flip[(state & mask) ? 1 : 0];
                    if ((pattern >> s) & 1) {
                        w *= e;
                        state ^= mask;
                    } else {
                        w *= 1.0 - e;
                    }
                }
            }
            if (((state >> output_bit) & 1) == 0) {
                p0 += w;
            }
        }
    }
    return Bias(std::clamp(2.0 * p0 - 1.0, -1.0, 1.0));
}

Bias enumerate_noisy_output_bias(
    const Circuit &circuit, Bias input_bias, const ErrorRates &rates, std::size_t output_bit) {
    std::vector<Bias> biases(circuit.width, input_bias);
    return enumerate_noisy_output_bias(circuit, biases, rates, output_bit);
}

}  // namespace hbac
