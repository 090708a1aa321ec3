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

#include "hbac/tape.h"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <sstream>

#include "hbac/bias.h"
#include "hbac/majority.h"

namespace hbac {

namespace {

constexpr std::size_t MAX_COMPILE_TRIPLES = 33;

Species pred(Species s) {
    return static_cast<Species>((static_cast<int>(s) + 2) % 3);
}

std::string_view layer_name(SwapLayer layer) {
    switch (layer) {
        case SwapLayer::AB:
            return "AB";
        case SwapLayer::BC:
            return "BC";
        case SwapLayer::AC:
            return "AC";
    }
    return "?";
}

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

char species_char(Species s) {
    return "ABC"[static_cast<int>(s)];
}

PrimitiveOp PrimitiveOp::parallel_swap(SwapLayer layer) {
    return {Kind::PARALLEL_SWAP, layer, Gate{}};
}

PrimitiveOp PrimitiveOp::head_gate(Gate gate) {
    gate.validate(3);
    return {Kind::HEAD_GATE, SwapLayer::AB, std::move(gate)};
}

std::string PrimitiveOp::str() const {
    if (kind == Kind::PARALLEL_SWAP) {
        return "PSWAP " + std::string(layer_name(layer));
    }
    return "HEAD " + gate.str();
}

std::string dump_program(const PulseProgram &program) {
    std::string out;
    for (const auto &op : program) {
        out += op.str();
        out += '\n';
    }
    return out;
}

PulseProgram parse_program(std::string_view text) {
    PulseProgram program;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        line_no++;
        std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) {
            continue;
        }
        std::string where = "line " + std::to_string(line_no) + ": ";
        if (line.rfind("PSWAP", 0) == 0) {
            std::string arg = trim(std::string_view(line).substr(5));
            if (arg == "AB") {
                program.push_back(PrimitiveOp::parallel_swap(SwapLayer::AB));
            } else if (arg == "BC") {
                program.push_back(PrimitiveOp::parallel_swap(SwapLayer::BC));
            } else if (arg == "AC") {
                program.push_back(PrimitiveOp::parallel_swap(SwapLayer::AC));
            } else {
                throw ParseError(where + "unknown swap layer '" + arg + "'");
            }
        } else if (line.rfind("HEAD", 0) == 0) {
            Gate g = parse_gate(trim(std::string_view(line).substr(4)));
            try {
                program.push_back(PrimitiveOp::head_gate(std::move(g)));
            } catch (const DomainError &e) {
                throw ParseError(where + e.what());
            }
        } else {
            throw ParseError(where + "expected PSWAP or HEAD");
        }
    }
    return program;
}

PulseProgram reversed(const PulseProgram &program) {
    return PulseProgram(program.rbegin(), program.rend());
}

ChainLoop::ChainLoop(std::size_t triples, std::size_t head) : ChainLoop(triples, head, std::vector<bool>(3 * triples)) {}

ChainLoop::ChainLoop(std::size_t triples, std::size_t head, const std::vector<bool> &values)
    : triples_(triples), head_(head) {
    if (triples < 3 || triples % 2 == 0) {
        throw DomainError("the loop needs an odd number (>= 3) of triples");
    }
    if (head >= triples) {
        throw DomainError("head triple outside the loop");
    }
    if (values.size() != 3 * triples) {
        throw DomainError("need one value per cell");
    }
    cells_.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); i++) {
        cells_.push_back({i, values[i]});
    }
}

std::size_t ChainLoop::cell(std::size_t triple, Species s) const {
    return 3 * (triple % triples_) + static_cast<std::size_t>(s);
}

std::vector<bool> ChainLoop::values() const {
    std::vector<bool> out;
    out.reserve(cells_.size());
    for (const auto &c : cells_) {
        out.push_back(c.value);
    }
    return out;
}

std::vector<std::size_t> ChainLoop::ids() const {
    std::vector<std::size_t> out;
    out.reserve(cells_.size());
    for (const auto &c : cells_) {
        out.push_back(c.id);
    }
    return out;
}

std::size_t ChainLoop::position_of(std::size_t id) const {
    for (std::size_t p = 0; p < cells_.size(); p++) {
        if (cells_[p].id == id) {
            return p;
        }
    }
    throw DomainError("no bit with id " + std::to_string(id));
}

std::size_t ChainLoop::layer_image(SwapLayer layer, std::size_t c) const {
    std::size_t n = cells_.size();
    Species s = species_of(c);
    switch (layer) {
        case SwapLayer::AB:
            return s == Species::A ? c + 1 : s == Species::B ? c - 1 : c;
        case SwapLayer::BC:
            return s == Species::B ? c + 1 : s == Species::C ? c - 1 : c;
        case SwapLayer::AC:
            return s == Species::C ? (c + 1) % n : s == Species::A ? (c + n - 1) % n : c;
    }
    return c;
}

void ChainLoop::apply(const PrimitiveOp &op) {
    if (op.kind == PrimitiveOp::Kind::PARALLEL_SWAP) {
        for (std::size_t t = 0; t < triples_; t++) {
            std::size_t a = 0;
            switch (op.layer) {
                case SwapLayer::AB:
                    a = cell(t, Species::A);
                    break;
                case SwapLayer::BC:
                    a = cell(t, Species::B);
                    break;
                case SwapLayer::AC:
                    a = cell(t, Species::C);
                    break;
            }
            std::swap(cells_[a], cells_[layer_image(op.layer, a)]);
        }
        return;
    }
    const Gate &g = op.gate;
    std::array<std::size_t, 3> wire{head_cell(Species::A), head_cell(Species::B), head_cell(Species::C)};
    BasisState state = 0;
    for (std::size_t w = 0; w < 3; w++) {
        state |= static_cast<BasisState>(cells_[wire[w]].value) << w;
    }
    if (!g.controls_satisfied(state)) {
        return;
    }
    if (g.kind == GateKind::SWAP || g.kind == GateKind::CONTROLLED_SWAP) {
        std::swap(cells_[wire[g.targets[0]]], cells_[wire[g.targets[1]]]);
    } else {
        cells_[wire[g.targets[0]]].value = !cells_[wire[g.targets[0]]].value;
    }
}

void ChainLoop::run(const PulseProgram &program) {
    for (const auto &op : program) {
        apply(op);
    }
}

PulseProgram shift_sequence(Species fixed, Direction direction) {
    // Fixed B; relabelling A->B->C->A maps layers AC->AB, AB->BC, BC->AC.
    std::array<SwapLayer, 4> base{SwapLayer::AC, SwapLayer::AB, SwapLayer::BC, SwapLayer::AB};
    auto relabel = [](SwapLayer l) {
        switch (l) {
            case SwapLayer::AC:
                return SwapLayer::AB;
            case SwapLayer::AB:
                return SwapLayer::BC;
            case SwapLayer::BC:
                return SwapLayer::AC;
        }
        return l;
    };
    int turns = (static_cast<int>(fixed) - static_cast<int>(Species::B) + 3) % 3;
    for (int r = 0; r < turns; r++) {
        for (auto &l : base) {
            l = relabel(l);
        }
    }
    PulseProgram program;
    for (SwapLayer l : base) {
        program.push_back(PrimitiveOp::parallel_swap(l));
    }
    return direction == Direction::FORWARD ? program : reversed(program);
}

int shift_displacement(Species fixed, Direction direction, Species moving) {
    if (moving == fixed) {
        return 0;
    }
    int forward = moving == pred(fixed) ? -1 : 1;
    return direction == Direction::FORWARD ? forward : -forward;
}

TapeRun bring_pair_under_head(ChainLoop loop, std::size_t pos1, std::size_t pos2) {
    std::size_t n = loop.size();
    if (pos1 >= n || pos2 >= n) {
        throw DomainError("cell outside the loop");
    }
    if ((pos1 + 1) % n != pos2 && (pos2 + 1) % n != pos1) {
        throw DomainError("cells " + std::to_string(pos1) + " and " + std::to_string(pos2) + " are not adjacent");
    }
    TapeRun run{std::move(loop), {}};
    std::size_t m = run.loop.triples();
    std::size_t h = run.loop.head();
    std::size_t id1 = run.loop.cells()[pos1].id;
    std::size_t id2 = run.loop.cells()[pos2].id;

    // Holds `still`'s species fixed and walks `mover` to the head triple.
    auto leg = [&](std::size_t still, std::size_t mover) {
        Species fixed = ChainLoop::species_of(run.loop.position_of(still));
        std::size_t at = run.loop.triple_of(run.loop.position_of(mover));
        std::size_t cw = (h + m - at) % m;
        std::size_t steps = std::min(cw, m - cw);
        Species moving = ChainLoop::species_of(run.loop.position_of(mover));
        int want = cw <= m - cw ? 1 : -1;
        Direction dir = shift_displacement(fixed, Direction::FORWARD, moving) == want ? Direction::FORWARD
                                                                                       : Direction::BACKWARD;
        PulseProgram shift = shift_sequence(fixed, dir);
        for (std::size_t k = 0; k < steps; k++) {
            run.loop.run(shift);
            run.program.insert(run.program.end(), shift.begin(), shift.end());
        }
    };
    leg(id1, id2);
    leg(id2, id1);
    return run;
}

TapeRun swap_adjacent(ChainLoop loop, std::size_t pos) {
    std::size_t n = loop.size();
    if (pos >= n) {
        throw DomainError("cell outside the loop");
    }
    std::size_t next = (pos + 1) % n;
    TapeRun gather = bring_pair_under_head(std::move(loop), pos, next);
    auto head_wire = [](std::size_t cell) { return cell % 3; };
    std::size_t w1 = head_wire(pos);
    std::size_t w2 = head_wire(next);
    PrimitiveOp swap = PrimitiveOp::head_gate(Gate::swap(w1, w2));
    gather.loop.apply(swap);
    PulseProgram back = reversed(gather.program);
    gather.loop.run(back);
    gather.program.push_back(swap);
    gather.program.insert(gather.program.end(), back.begin(), back.end());
    return gather;
}

TapeRun apply_permutation(ChainLoop loop, std::span<const std::size_t> perm) {
    std::size_t n = loop.size();
    if (perm.size() != n) {
        throw DomainError("permutation size differs from the loop size");
    }
    std::vector<bool> seen(n, false);
    for (std::size_t d : perm) {
        if (d >= n || seen[d]) {
            throw DomainError("not a permutation of the loop cells");
        }
        seen[d] = true;
    }
    std::vector<std::size_t> dest(perm.begin(), perm.end());
    TapeRun run{std::move(loop), {}};
    bool swapped = true;
    while (swapped) {
        swapped = false;
        for (std::size_t c = 0; c + 1 < n; c++) {
            if (dest[c] > dest[c + 1]) {
                TapeRun step = swap_adjacent(std::move(run.loop), c);
                run.loop = std::move(step.loop);
                run.program.insert(run.program.end(), step.program.begin(), step.program.end());
                std::swap(dest[c], dest[c + 1]);
                swapped = true;
            }
        }
    }
    return run;
}

PulseProgram compile_cooling_step(const ChainLoop &loop, std::array<std::size_t, 3> positions) {
    std::size_t n = loop.size();
    for (std::size_t p : positions) {
        if (p >= n) {
            throw DomainError("cell outside the loop");
        }
    }
    if (positions[0] == positions[1] || positions[1] == positions[2] || positions[0] == positions[2]) {
        throw DomainError("cooling step needs three distinct cells");
    }
    if (loop.triples() > MAX_COMPILE_TRIPLES) {
        throw DomainError("cooling-step compilation supports at most 33 triples");
    }

    std::vector<PrimitiveOp> moves = {
        PrimitiveOp::parallel_swap(SwapLayer::AB),
        PrimitiveOp::parallel_swap(SwapLayer::BC),
        PrimitiveOp::parallel_swap(SwapLayer::AC),
        PrimitiveOp::head_gate(Gate::swap(WIRE_A, WIRE_B)),
        PrimitiveOp::head_gate(Gate::swap(WIRE_B, WIRE_C)),
        PrimitiveOp::head_gate(Gate::swap(WIRE_A, WIRE_C)),
    };
    std::array<std::size_t, 3> head{
        loop.head_cell(Species::A), loop.head_cell(Species::B), loop.head_cell(Species::C)};
    auto image = [&](const PrimitiveOp &op, std::size_t c) {
        if (op.kind == PrimitiveOp::Kind::PARALLEL_SWAP) {
            return loop.layer_image(op.layer, c);
        }
        std::size_t a = head[op.gate.targets[0]];
        std::size_t b = head[op.gate.targets[1]];
        return c == a ? b : c == b ? a : c;
    };
    auto encode = [n](std::size_t a, std::size_t b, std::size_t c) { return (a * n + b) * n + c; };

    // Breadth-first search over where the three tracked bits sit.
    std::size_t start = encode(positions[0], positions[1], positions[2]);
    std::size_t goal = encode(head[0], head[1], head[2]);
    constexpr std::uint32_t UNSEEN = UINT32_MAX;
    std::vector<std::uint32_t> parent(n * n * n, UNSEEN);
    std::vector<std::uint8_t> via(n * n * n, 0);
    std::deque<std::size_t> queue{start};
    parent[start] = static_cast<std::uint32_t>(start);
    while (!queue.empty() && parent[goal] == UNSEEN) {
        std::size_t s = queue.front();
        queue.pop_front();
        std::size_t a = s / (n * n);
        std::size_t b = (s / n) % n;
        std::size_t c = s % n;
        for (std::size_t k = 0; k < moves.size(); k++) {
            std::size_t t = encode(image(moves[k], a), image(moves[k], b), image(moves[k], c));
            if (parent[t] == UNSEEN) {
                parent[t] = static_cast<std::uint32_t>(s);
                via[t] = static_cast<std::uint8_t>(k);
                queue.push_back(t);
            }
        }
    }
    if (parent[goal] == UNSEEN) {
        throw DomainError("head triple unreachable");
    }
    PulseProgram gather;
    for (std::size_t s = goal; s != start; s = parent[s]) {
        gather.push_back(moves[via[s]]);
    }
    std::reverse(gather.begin(), gather.end());

    PulseProgram program = gather;
    for (const Gate &g : majority_circuit_cnot_toffoli().gates) {
        program.push_back(PrimitiveOp::head_gate(g));
    }
    PulseProgram back = reversed(gather);
    program.insert(program.end(), back.begin(), back.end());
    return program;
}

}  // namespace hbac
