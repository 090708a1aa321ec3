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

#include "hbac/circuit.h"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "hbac/bias.h"

namespace hbac {

namespace {

bool bit_of(BasisState state, std::size_t bit) {
    return (state >> bit) & 1;
}

const char *kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::NOT:
            return "NOT";
        case GateKind::CNOT:
            return "CNOT";
        case GateKind::GENERALIZED_TOFFOLI:
            return "TOFFOLI";
        case GateKind::SWAP:
            return "SWAP";
        case GateKind::CONTROLLED_SWAP:
            return "CSWAP";
    }
    return "?";
}

std::vector<std::string_view> split_words(std::string_view line) {
    std::vector<std::string_view> words;
    std::size_t k = 0;
    while (k < line.size()) {
        while (k < line.size() && (line[k] == ' ' || line[k] == '\t' || line[k] == '\r')) {
            k++;
        }
        std::size_t start = k;
        while (k < line.size() && line[k] != ' ' && line[k] != '\t' && line[k] != '\r') {
            k++;
        }
        if (k > start) {
            words.push_back(line.substr(start, k - start));
        }
    }
    return words;
}

std::size_t parse_index(std::string_view word) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
    if (ec != std::errc() || ptr != word.data() + word.size()) {
        throw ParseError("expected a bit index, got '" + std::string(word) + "'");
    }
    return value;
}

Control parse_control(std::string_view word) {
    if (!word.empty() && word.front() == '!') {
        return {parse_index(word.substr(1)), false};
    }
    return {parse_index(word), true};
}

}  // namespace

Gate Gate::x(std::size_t target) {
    return {GateKind::NOT, {target}, {}};
}

Gate Gate::cnot(std::size_t control, std::size_t target) {
    return {GateKind::CNOT, {target}, {{control, true}}};
}

Gate Gate::toffoli(std::vector<Control> controls, std::size_t target) {
    return {GateKind::GENERALIZED_TOFFOLI, {target}, std::move(controls)};
}

Gate Gate::swap(std::size_t a, std::size_t b) {
    return {GateKind::SWAP, {a, b}, {}};
}

Gate Gate::cswap(std::vector<Control> controls, std::size_t a, std::size_t b) {
    return {GateKind::CONTROLLED_SWAP, {a, b}, std::move(controls)};
}

bool Gate::controls_satisfied(BasisState state) const {
    return std::all_of(controls.begin(), controls.end(), [&](const Control &c) {
        return bit_of(state, c.bit) == c.value;
    });
}

BasisState Gate::apply(BasisState state) const {
    if (!controls_satisfied(state)) {
        return state;
    }
    switch (kind) {
        case GateKind::NOT:
        case GateKind::CNOT:
        case GateKind::GENERALIZED_TOFFOLI:
            return state ^ (BasisState{1} << targets[0]);
        case GateKind::SWAP:
        case GateKind::CONTROLLED_SWAP: {
            bool a = bit_of(state, targets[0]);
            bool b = bit_of(state, targets[1]);
            if (a != b) {
                state ^= (BasisState{1} << targets[0]) | (BasisState{1} << targets[1]);
            }
            return state;
        }
    }
    return state;
}

void Gate::validate(std::size_t width) const {
    std::size_t want_targets = (kind == GateKind::SWAP || kind == GateKind::CONTROLLED_SWAP) ? 2 : 1;
    if (targets.size() != want_targets) {
        throw DomainError(std::string(kind_name(kind)) + " has the wrong number of targets");
    }
    bool ok_controls = true;
    switch (kind) {
        case GateKind::NOT:
        case GateKind::SWAP:
            ok_controls = controls.empty();
            break;
        case GateKind::CNOT:
            ok_controls = controls.size() == 1;
            break;
        case GateKind::GENERALIZED_TOFFOLI:
        case GateKind::CONTROLLED_SWAP:
            ok_controls = !controls.empty();
            break;
    }
    if (!ok_controls) {
        throw DomainError(std::string(kind_name(kind)) + " has the wrong number of controls");
    }
    std::set<std::size_t> seen;
    auto check = [&](std::size_t bit) {
        if (bit >= width) {
            throw DomainError("gate " + str() + " references bit " + std::to_string(bit) + " outside width " +
                              std::to_string(width));
        }
        if (!seen.insert(bit).second) {
            throw DomainError("gate " + str() + " references bit " + std::to_string(bit) + " twice");
        }
    };
    for (auto t : targets) {
        check(t);
    }
    for (const auto &c : controls) {
        check(c.bit);
    }
}

std::string Gate::str() const {
    std::ostringstream ss;
    ss << kind_name(kind);
    for (auto t : targets) {
        ss << ' ' << t;
    }
    for (const auto &c : controls) {
        ss << ' ' << (c.value ? "" : "!") << c.bit;
    }
    return ss.str();
}

void Circuit::validate() const {
    if (width == 0 || width > MAX_REGISTER_WIDTH) {
        throw DomainError("circuit width must be in [1, " + std::to_string(MAX_REGISTER_WIDTH) + "]");
    }
    for (const auto &g : gates) {
        g.validate(width);
    }
    for (const auto &site : noise_sites) {
        if (site.after_gate >= gates.size() || site.bit >= width) {
            throw DomainError("noise site (" + std::to_string(site.after_gate) + ", " + std::to_string(site.bit) +
                              ") is outside the circuit");
        }
    }
}

BasisState Circuit::run(BasisState input, std::uint64_t error_pattern) const {
    BasisState state = input;
    for (std::size_t g = 0; g < gates.size(); g++) {
        state = gates[g].apply(state);
        if (error_pattern == 0) {
            continue;
        }
        for (std::size_t k = 0; k < noise_sites.size(); k++) {
            if (noise_sites[k].after_gate == g && ((error_pattern >> k) & 1)) {
                state ^= BasisState{1} << noise_sites[k].bit;
            }
        }
    }
    return state;
}

std::string Circuit::str() const {
    std::ostringstream ss;
    ss << "WIDTH " << width << '\n';
    for (const auto &g : gates) {
        ss << g.str() << '\n';
    }
    for (const auto &site : noise_sites) {
        ss << "NOISE " << site.after_gate << ' ' << site.bit << '\n';
    }
    return ss.str();
}

Gate parse_gate(std::string_view line) {
    auto words = split_words(line);
    if (words.empty()) {
        throw ParseError("empty gate line");
    }
    std::string_view name = words[0];
    auto arg = [&](std::size_t k) {
        if (k >= words.size()) {
            throw ParseError("missing operand in '" + std::string(line) + "'");
        }
        return words[k];
    };
    auto controls_from = [&](std::size_t first) {
        std::vector<Control> controls;
        for (std::size_t k = first; k < words.size(); k++) {
            controls.push_back(parse_control(words[k]));
        }
        return controls;
    };
    if (name == "NOT") {
        if (words.size() != 2) {
            throw ParseError("NOT takes one target: '" + std::string(line) + "'");
        }
        return Gate::x(parse_index(arg(1)));
    }
    if (name == "CNOT") {
        if (words.size() != 3) {
            throw ParseError("CNOT takes a target and one control: '" + std::string(line) + "'");
        }
        return {GateKind::CNOT, {parse_index(arg(1))}, {parse_control(arg(2))}};
    }
    if (name == "TOFFOLI") {
        arg(2);
        return Gate::toffoli(controls_from(2), parse_index(arg(1)));
    }
    if (name == "SWAP") {
        if (words.size() != 3) {
            throw ParseError("SWAP takes two targets: '" + std::string(line) + "'");
        }
        return Gate::swap(parse_index(arg(1)), parse_index(arg(2)));
    }
    if (name == "CSWAP") {
        arg(3);
        return Gate::cswap(controls_from(3), parse_index(arg(1)), parse_index(arg(2)));
    }
    throw ParseError("unknown gate '" + std::string(name) + "'");
}

Circuit Circuit::parse(std::string_view text) {
    Circuit circuit;
    bool have_width = false;
    std::size_t max_bit = 0;
    bool any_bit = false;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        auto words = split_words(line);
        if (words.empty()) {
            continue;
        }
        if (words[0] == "WIDTH") {
            if (words.size() != 2) {
                throw ParseError("WIDTH takes one value");
            }
            circuit.width = parse_index(words[1]);
            have_width = true;
        } else if (words[0] == "NOISE") {
            if (words.size() != 3) {
                throw ParseError("NOISE takes a gate position and a bit");
            }
            circuit.noise_sites.push_back({parse_index(words[1]), parse_index(words[2])});
        } else {
            Gate g = parse_gate(line);
            for (auto t : g.targets) {
                max_bit = std::max(max_bit, t);
            }
            for (const auto &c : g.controls) {
                max_bit = std::max(max_bit, c.bit);
            }
            any_bit = true;
            circuit.gates.push_back(std::move(g));
        }
    }
    if (!have_width) {
        circuit.width = any_bit ? max_bit + 1 : 0;
    }
    circuit.validate();
    return circuit;
}

}  // namespace hbac
