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

#include "hbac/distribution.h"

#include <bit>
#include <cmath>

namespace hbac {

namespace {

void check_bit(const JointDistribution &dist, std::size_t bit) {
    if (bit >= dist.width()) {
        throw DomainError("bit " + std::to_string(bit) + " outside register of width " + std::to_string(dist.width()));
    }
}

}  // namespace

JointDistribution::JointDistribution(std::vector<double> probs) : width_(0), probs_(std::move(probs)) {
    std::size_t n = probs_.size();
    if (n == 0 || !std::has_single_bit(n) || n > (std::size_t{1} << MAX_REGISTER_WIDTH)) {
        throw DomainError("distribution size must be 2^w with 0 <= w <= 20");
    }
    width_ = static_cast<std::size_t>(std::countr_zero(n));
    for (double p : probs_) {
        if (!(p >= 0.0)) {
            throw DomainError("negative probability in distribution");
        }
    }
    if (std::abs(total() - 1.0) > 1e-12) {
        throw DomainError("distribution does not sum to 1");
    }
}

JointDistribution JointDistribution::point_mass(std::size_t width, BasisState state) {
    if (width > MAX_REGISTER_WIDTH || state >= (BasisState{1} << width)) {
        throw DomainError("point mass outside register");
    }
    std::vector<double> probs(std::size_t{1} << width, 0.0);
    probs[state] = 1.0;
    return JointDistribution(std::move(probs));
}

JointDistribution JointDistribution::uniform(std::size_t width) {
    if (width > MAX_REGISTER_WIDTH) {
        throw DomainError("register too wide");
    }
    std::size_t n = std::size_t{1} << width;
    return JointDistribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

double JointDistribution::total() const {
    // Compensated so that wide registers still pass the 1e-12 check.
    double sum = 0.0;
    double carry = 0.0;
    for (double p : probs_) {
        double y = p - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    return sum;
}

JointDistribution product_distribution(std::span<const Bias> biases) {
    if (biases.size() > MAX_REGISTER_WIDTH) {
        throw DomainError("product distribution wider than 20 bits");
    }
    std::vector<double> probs{1.0};
    for (std::size_t bit = 0; bit < biases.size(); bit++) {
        double p0 = biases[bit].prob0();
        std::size_t half = probs.size();
        probs.resize(half * 2);
        for (std::size_t x = 0; x < half; x++) {
            double w = probs[x];
            probs[x] = w * p0;
            probs[x + half] = w * (1.0 - p0);
        }
    }
    return JointDistribution(std::move(probs));
}

JointDistribution apply_gate(const JointDistribution &dist, const Gate &gate) {
    gate.validate(dist.width());
    std::vector<double> out(dist.probs().size(), 0.0);
    for (BasisState x = 0; x < out.size(); x++) {
        out[gate.apply(x)] = dist[x];
    }
    return JointDistribution(std::move(out));
}

Bias marginal_bias(const JointDistribution &dist, std::size_t bit) {
    check_bit(dist, bit);
    double p0 = 0.0;
    for (BasisState x = 0; x < dist.probs().size(); x++) {
        if (((x >> bit) & 1) == 0) {
            p0 += dist[x];
        }
    }
    return Bias(std::min(1.0, std::max(-1.0, 2.0 * p0 - 1.0)));
}

JointDistribution apply_bitflip_channel(const JointDistribution &dist, std::size_t bit, const ErrorRates &rates) {
    check_bit(dist, bit);
    std::vector<double> out(dist.probs().begin(), dist.probs().end());
    BasisState mask = BasisState{1} << bit;
    for (BasisState x = 0; x < out.size(); x++) {
        if (x & mask) {
            continue;
        }
        double zero = dist[x];
        double one = dist[x | mask];
        out[x] = zero * (1.0 - rates.eps0()) + one * rates.eps1();
        out[x | mask] = zero * rates.eps0() + one * (1.0 - rates.eps1());
    }
    return JointDistribution(std::move(out));
}

JointDistribution propagate(const Circuit &circuit, const JointDistribution &input, const ErrorRates &rates) {
    circuit.validate();
    if (circuit.width != input.width()) {
        throw DomainError("circuit and distribution widths differ");
    }
    JointDistribution dist = input;
    for (std::size_t g = 0; g < circuit.gates.size(); g++) {
        dist = apply_gate(dist, circuit.gates[g]);
        for (const auto &site : circuit.noise_sites) {
            if (site.after_gate == g) {
                dist = apply_bitflip_channel(dist, site.bit, rates);
            }
        }
    }
    return dist;
}

JointDistribution propagate(const Circuit &circuit, const JointDistribution &input) {
    return propagate(circuit, input, ErrorRates{});
}

Postselection postselect(const JointDistribution &dist, std::size_t bit, bool value) {
    check_bit(dist, bit);
    std::vector<double> out(dist.probs().size(), 0.0);
    double kept = 0.0;
    for (BasisState x = 0; x < out.size(); x++) {
        if ((((x >> bit) & 1) != 0) == value) {
            out[x] = dist[x];
            kept += dist[x];
        }
    }
    if (kept <= 0.0) {
        throw DomainError("postselected branch has probability zero");
    }
    for (double &p : out) {
        p /= kept;
    }
    return {JointDistribution(std::move(out)), kept};
}

}  // namespace hbac
