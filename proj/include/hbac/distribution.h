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

#ifndef HBAC_DISTRIBUTION_H
#define HBAC_DISTRIBUTION_H

#include <span>
#include <vector>

#include "hbac/bias.h"
#include "hbac/circuit.h"

namespace hbac {

/// Exact probability vector over the 2^width basis states of a register.
class JointDistribution {
   public:
    /// Takes ownership of `probs`; its size must be a power of two no larger
    /// than 2^MAX_REGISTER_WIDTH, entries nonnegative, total 1 within 1e-12.
    explicit JointDistribution(std::vector<double> probs);

    static JointDistribution point_mass(std::size_t width, BasisState state);
    static JointDistribution uniform(std::size_t width);

    std::size_t width() const {
        return width_;
    }
    std::span<const double> probs() const {
        return probs_;
    }
    double operator[](BasisState state) const {
        return probs_[state];
    }
    double total() const;

   private:
    std::size_t width_;
    std::vector<double> probs_;
};

JointDistribution product_distribution(std::span<const Bias> biases);
JointDistribution apply_gate(const JointDistribution &dist, const Gate &gate);
Bias marginal_bias(const JointDistribution &dist, std::size_t bit);
JointDistribution apply_bitflip_channel(const JointDistribution &dist, std::size_t bit, const ErrorRates &rates);

/// Runs a circuit on a distribution, applying the bit-flip channel at every
/// noise site.
JointDistribution propagate(const Circuit &circuit, const JointDistribution &input, const ErrorRates &rates);
JointDistribution propagate(const Circuit &circuit, const JointDistribution &input);

struct Postselection {
    JointDistribution conditional;
    double probability;
};

/// Conditions the distribution on `bit` reading `value` and renormalizes.
Postselection postselect(const JointDistribution &dist, std::size_t bit, bool value);

}  // namespace hbac

#endif
