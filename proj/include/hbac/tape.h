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

#ifndef HBAC_TAPE_H
#define HBAC_TAPE_H

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hbac/circuit.h"

namespace hbac {

/// Cell species, repeating A B C around the loop. Cell 3t + s is species s
/// of triple t; clockwise is increasing cell index.
enum class Species : std::uint8_t { A = 0, B = 1, C = 2 };

char species_char(Species s);

enum class SwapLayer : std::uint8_t { AB, BC, AC };

enum class Direction : std::uint8_t { FORWARD, BACKWARD };

/// One pulse. PARALLEL_SWAP exchanges every adjacent pair of the layer's
/// species at once (AC pairs C of triple t with A of triple t + 1).
/// HEAD_GATE runs a gate on the head triple, wires 0, 1, 2 = cells A, B, C.
struct PrimitiveOp {
    enum class Kind : std::uint8_t { PARALLEL_SWAP, HEAD_GATE };

    Kind kind;
    SwapLayer layer = SwapLayer::AB;
    Gate gate{};

    static PrimitiveOp parallel_swap(SwapLayer layer);
    static PrimitiveOp head_gate(Gate gate);

    /// `PSWAP AB` or `HEAD <gate line>`.
    std::string str() const;
    bool operator==(const PrimitiveOp &) const = default;
};

using PulseProgram = std::vector<PrimitiveOp>;

std::string dump_program(const PulseProgram &program);
/// Inverse of dump_program; blank lines and `#` comments are skipped.
PulseProgram parse_program(std::string_view text);

/// Every op is an involution, so reversing a program inverts it.
PulseProgram reversed(const PulseProgram &program);

/// A logical bit: `id` follows it around the loop.
struct Cell {
    std::size_t id;
    bool value;
    bool operator==(const Cell &) const = default;
};

class ChainLoop {
   public:
    /// m triples (m odd, m >= 3). Bit i starts in cell i with value 0.
    ChainLoop(std::size_t triples, std::size_t head);
    ChainLoop(std::size_t triples, std::size_t head, const std::vector<bool> &values);

    std::size_t triples() const {
        return triples_;
    }
    std::size_t size() const {
        return cells_.size();
    }
    std::size_t head() const {
        return head_;
    }
    std::size_t cell(std::size_t triple, Species s) const;
    std::size_t head_cell(Species s) const {
        return cell(head_, s);
    }
    static Species species_of(std::size_t cell) {
        return static_cast<Species>(cell % 3);
    }
    std::size_t triple_of(std::size_t cell) const {
        return cell / 3;
    }

    const std::vector<Cell> &cells() const {
        return cells_;
    }
    std::vector<bool> values() const;
    /// Logical bit id held by each cell.
    std::vector<std::size_t> ids() const;
    std::size_t position_of(std::size_t id) const;

    void apply(const PrimitiveOp &op);
    void run(const PulseProgram &program);

    /// Cell that a bit in `cell` moves to under a PARALLEL_SWAP layer.
    std::size_t layer_image(SwapLayer layer, std::size_t cell) const;

    bool operator==(const ChainLoop &) const = default;

   private:
    std::size_t triples_;
    std::size_t head_;
    std::vector<Cell> cells_;
};

/// Four parallel-swap layers that hold the `fixed` species in place and
/// move the other two one triple in opposite directions. FORWARD with fixed
/// B is (AC, AB, BC, AB): A bits go counterclockwise, C bits clockwise.
/// Fixed C and fixed A are the same pattern with species relabelled.
PulseProgram shift_sequence(Species fixed, Direction direction);

/// Net triple displacement (+1 clockwise, -1 counterclockwise, 0 fixed) of
/// species `moving` under shift_sequence(fixed, direction).
int shift_displacement(Species fixed, Direction direction, Species moving);

struct TapeRun {
    ChainLoop loop;
    PulseProgram program;

    std::size_t pulses() const {
        return program.size();
    }
};

/// Shifts the bits in two neighbouring cells into the head triple's cells of
/// the same species, using only shift sequences: first the bit whose
/// species is held fixed waits while the other one travels, then the roles
/// swap. Each leg goes the shorter way round.
TapeRun bring_pair_under_head(ChainLoop loop, std::size_t pos1, std::size_t pos2);

/// Exchanges the bits in cell pos and its clockwise neighbour: shuttle the
/// pair under the head, SWAP there, then run the shuttle backwards.
TapeRun swap_adjacent(ChainLoop loop, std::size_t pos);

/// Moves the bit in cell i to cell perm[i], by bubble sort over adjacent
/// swaps.
TapeRun apply_permutation(ChainLoop loop, std::span<const std::size_t> perm);

/// Gathers the bits in positions[0..2] onto head cells A, B, C with a
/// fewest-pulse sequence of parallel swaps and head SWAPs, runs the
/// CNOT/Toffoli majority there, then undoes the gathering. The majority ends
/// in the bit that started in positions[0]. Supports m <= 33.
PulseProgram compile_cooling_step(const ChainLoop &loop, std::array<std::size_t, 3> positions);

}  // namespace hbac

#endif
