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

#include "hbac/majority.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <vector>

namespace hbac {

namespace {

void check_odd(unsigned n) {
    if (n % 2 == 0) {
        throw DomainError("majority needs an odd number of bits");
    }
}

double binomial(unsigned n, unsigned k) {
    double r = 1.0;
    for (unsigned j = 1; j <= k; j++) {
        r = r * static_cast<double>(n - k + j) / static_cast<double>(j);
    }
    return r;
}

}  // namespace

Circuit majority_circuit_cswap() {
    Circuit c;
    c.width = 3;
    c.gates = {
        Gate::cnot(WIRE_A, WIRE_B),
        Gate::cnot(WIRE_C, WIRE_A),
        Gate::toffoli({{WIRE_B, true}, {WIRE_A, true}}, WIRE_C),
        Gate::cnot(WIRE_C, WIRE_A),
    };
    return c;
}

Circuit majority_circuit_cnot_toffoli() {
    Circuit c;
    c.width = 3;
    c.gates = {
        Gate::cnot(WIRE_A, WIRE_B),
        Gate::cnot(WIRE_A, WIRE_C),
        Gate::toffoli({{WIRE_B, true}, {WIRE_C, true}}, WIRE_A),
    };
    c.noise_sites = {
        {0, WIRE_A}, {0, WIRE_B}, {0, WIRE_C},
        {1, WIRE_A}, {1, WIRE_B}, {1, WIRE_C},
        {2, WIRE_A},
    };
    return c;
}

Circuit cnot_cswap_circuit() {
    Circuit c;
    c.width = 3;
    c.gates = {
        Gate::cnot(0, 1),
        Gate::cswap({{1, false}}, 0, 2),
    };
    return c;
}

bool cnot_cswap_majority(bool b1, bool b2, bool c) {
    return (b1 && c) ^ (b2 && c) ^ (b1 && b2);
}

bool majority3(bool a, bool b, bool c) {
    return static_cast<int>(a) + static_cast<int>(b) + static_cast<int>(c) >= 2;
}

Bias optimal_permutation_bias(unsigned n, Bias b) {
    check_odd(n);
    if (n > 63) {
        throw DomainError("majority size too large");
    }
    double p = b.prob0();
    double p_majority_zero = 0.0;
    for (unsigned zeros = (n + 1) / 2; zeros <= n; zeros++) {
        p_majority_zero += binomial(n, zeros) * std::pow(p, zeros) * std::pow(1.0 - p, n - zeros);
    }
    return Bias(std::min(1.0, 2.0 * p_majority_zero - 1.0));
}

PermutationSearch exhaustive_best_first_bit_bias(unsigned n, Bias b) {
    check_odd(n);
    if (n > 5) {
        throw DomainError("exhaustive permutation search supports n <= 5");
    }
    double p = b.prob0();
    std::size_t states = std::size_t{1} << n;

    auto state_prob = [&](std::size_t x) {
        int ones = std::popcount(x);
        return std::pow(p, static_cast<int>(n) - ones) * std::pow(1.0 - p, ones);
    };

    if (n <= 3) {
        std::vector<BasisState> perm(states);
        std::iota(perm.begin(), perm.end(), BasisState{0});
        std::vector<double> probs(states);
        for (std::size_t x = 0; x < states; x++) {
            probs[x] = state_prob(x);
        }
        double best = -1.0;
        std::uint64_t count = 0;
        do {
            double p0 = 0.0;
            for (std::size_t x = 0; x < states; x++) {
                if ((perm[x] & 1) == 0) {
                    p0 += probs[x];
                }
            }
            best = std::max(best, 2.0 * p0 - 1.0);
            count++;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return {Bias(std::min(1.0, best)), count};
    }

    // Only the set of states sent to first-bit-0 images matters, and within
    // a Hamming-weight class all states are equally likely.
    std::vector<unsigned> class_size(n + 1);
    std::vector<double> class_prob(n + 1);
    for (unsigned w = 0; w <= n; w++) {
        class_size[w] = static_cast<unsigned>(binomial(n, w) + 0.5);
        class_prob[w] = std::pow(p, static_cast<int>(n - w)) * std::pow(1.0 - p, static_cast<int>(w));
    }
    unsigned need = static_cast<unsigned>(states / 2);
    double best = -1.0;
    std::uint64_t count = 0;
    auto recurse = [&](auto &&self, unsigned w, unsigned remaining, double mass) -> void {
        if (w == n + 1) {
            if (remaining == 0) {
                best = std::max(best, 2.0 * mass - 1.0);
                count++;
            }
            return;
        }
        for (unsigned c = 0; c <= std::min(class_size[w], remaining); c++) {
            self(self, w + 1, remaining - c, mass + c * class_prob[w]);
        }
    };
    recurse(recurse, 0, need, 0.0);
    return {Bias(std::min(1.0, best)), count};
}

}  // namespace hbac
