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

#ifndef HBAC_CIRCUIT_H
#define HBAC_CIRCUIT_H

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hbac {

/// Basis states are indexed with bit 0 as the least significant bit.
using BasisState = std::uint32_t;

constexpr std::size_t MAX_REGISTER_WIDTH = 20;

enum class GateKind : std::uint8_t {
    NOT,
    CNOT,
    GENERALIZED_TOFFOLI,
    SWAP,
    CONTROLLED_SWAP,
};

struct Control {
    std::size_t bit;
    bool value;

    bool operator==(const Control &) const = default;
};

/// A classical reversible gate. NOT/CNOT/GENERALIZED_TOFFOLI flip
/// targets[0] when every control holds its required value; SWAP and
/// CONTROLLED_SWAP exchange targets[0] and targets[1] under the same rule.
struct Gate {
    GateKind kind;
    std::vector<std::size_t> targets;
    std::vector<Control> controls;

    static Gate x(std::size_t target);
    static Gate cnot(std::size_t control, std::size_t target);
    static Gate toffoli(std::vector<Control> controls, std::size_t target);
    static Gate swap(std::size_t a, std::size_t b);
    static Gate cswap(std::vector<Control> controls, std::size_t a, std::size_t b);

    bool controls_satisfied(BasisState state) const;
    BasisState apply(BasisState state) const;
    /// Throws DomainError when an index is out of range or repeated, or when
    /// the control/target counts do not fit the kind.
    void validate(std::size_t width) const;
    std::string str() const;

    bool operator==(const Gate &) const = default;
};

/// A bit-flip channel applied to `bit` right after gate number `after_gate`.
struct NoiseSite {
    std::size_t after_gate;
    std::size_t bit;

    bool operator==(const NoiseSite &) const = default;
};

struct Circuit {
    std::size_t width = 0;
    std::vector<Gate> gates;
    std::vector<NoiseSite> noise_sites;

    void validate() const;
    /// Applies all gates to a basis state, flipping the bit of noise site k
    /// whenever bit k of `error_pattern` is set.
    BasisState run(BasisState input, std::uint64_t error_pattern = 0) const;

    /// Line-oriented text form: `WIDTH n`, one gate per line, `NOISE pos bit`.
    std::string str() const;
    static Circuit parse(std::string_view text);

    bool operator==(const Circuit &) const = default;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Gate parse_gate(std::string_view line);

}  // namespace hbac

#endif
