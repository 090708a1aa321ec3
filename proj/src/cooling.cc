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

#include "hbac/cooling.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace hbac {

namespace {

constexpr std::uint64_t U64_MAX = std::numeric_limits<std::uint64_t>::max();
constexpr std::size_t MAX_LEVELS = 100000;
constexpr unsigned MAX_LITERAL_HEATBATH_LEVELS = 10;
constexpr std::uint64_t MAX_LITERAL_OPS = 1000000;

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b, bool &saturated) {
    if (a > U64_MAX - b) {
        saturated = true;
        return U64_MAX;
    }
    return a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b, bool &saturated) {
    if (a != 0 && b > U64_MAX / a) {
        saturated = true;
        return U64_MAX;
    }
    return a * b;
}

std::uint64_t sat_pow3(std::size_t k, bool &saturated) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < k; i++) {
        r = sat_mul(r, 3, saturated);
    }
    return r;
}

void require_cooling_targets(Bias b_i, Bias b_t) {
    if (!(b_i.value() > 0.0 && b_i < b_t && b_t.value() < 1.0)) {
        throw DomainError("cooling needs 0 < b_i < b_t < 1");
    }
}

std::vector<double> snapshot(const RegisterBiases &state) {
    std::vector<double> out;
    out.reserve(state.biases.size());
    for (Bias b : state.biases) {
        out.push_back(b.value());
    }
    return out;
}

// Majority step under bath resets; returns the position that received the
// result.
std::size_t hb_step(RegisterBiases &state, std::size_t i, std::size_t j, std::size_t k, CostLedger *ledger) {
    std::size_t n = state.biases.size();
    if (i >= n || j >= n || k >= n) {
        throw DomainError("three_bc_hb position outside the register");
    }
    if (i == j || j == k || i == k) {
        throw DomainError("three_bc_hb needs three distinct positions");
    }
    std::array<std::size_t, 3> pos{i, j, k};
    std::stable_sort(pos.begin(), pos.end(), [&](std::size_t a, std::size_t b) {
        return state.biases[a] < state.biases[b];
    });
    Bias result = three_bc_bias_unequal(state.biases[pos[0]], state.biases[pos[1]], state.biases[pos[2]]);
    state.biases[pos[2]] = result;
    state.biases[pos[0]] = state.initial_bias;
    state.biases[pos[1]] = state.initial_bias;
    if (ledger) {
        ledger->add_ops(1);
        ledger->add_contacts(2);
    }
    return pos[2];
}

struct LevelRun {
    std::vector<double> sequence;
    bool reached_target = false;
};

// Iterates an equal-bias majority update level by level from b_i.
LevelRun run_levels(double b_i, double b_t, const std::function<double(double)> &step, bool stop_on_stall) {
    LevelRun run;
    double b = b_i;
    run.sequence.push_back(b);
    while (b < b_t) {
        if (run.sequence.size() > MAX_LEVELS) {
            throw DomainError("recursion did not reach the target");
        }
        double next = step(b);
        if (!(next > b)) {
            if (stop_on_stall) {
                return run;
            }
            throw DomainError("majority step stopped improving before the target");
        }
        b = next;
        run.sequence.push_back(b);
    }
    run.reached_target = true;
    return run;
}

using Step3 = std::function<double(Bias, Bias, Bias)>;

struct FibRun {
    std::vector<double> sequence;
    std::vector<std::size_t> repetitions;
    bool reached_target = false;
};

// Builds B_1, B_2, ... with each new bit driven to its steady state against
// the previous two. Stops after max_n bits, at b_t, or (when asked) once a
// new bit no longer beats the one before.
FibRun run_fibonacci(double b_i, std::size_t max_n, double b_t, const Step3 &step, double tol, bool stop_on_stall) {
    FibRun run;
    run.sequence = {b_i, b_i};
    run.repetitions = {0, 0};
    if (b_i >= b_t) {
        run.reached_target = true;
        return run;
    }
    while (run.sequence.size() < max_n) {
        Bias a(run.sequence[run.sequence.size() - 2]);
        Bias b(run.sequence.back());
        FixedPoint fp = iterate_to_fixed_point([&](double x) { return step(a, b, Bias(x)); }, b_i, tol);
        if (stop_on_stall && !(fp.value > b.value())) {
            return run;
        }
        run.sequence.push_back(fp.value);
        run.repetitions.push_back(fp.iterations);
        if (fp.value >= b_t) {
            run.reached_target = true;
            return run;
        }
    }
    return run;
}

// Cost of preparing bit j when each refresh re-prepares bits j-1 and j-2.
CostLedger fibonacci_ledger(const std::vector<std::size_t> &repetitions) {
    CostLedger ledger;
    std::vector<std::uint64_t> cost(repetitions.size(), 0);
    for (std::size_t j = 2; j < repetitions.size(); j++) {
        bool sat = false;
        std::uint64_t inner = sat_add(sat_add(cost[j - 1], cost[j - 2], sat), 1, sat);
        cost[j] = sat_mul(repetitions[j], inner, sat);
        ledger.saturated = ledger.saturated || sat;
    }
    std::uint64_t ops = cost.empty() ? 0 : cost.back();
    ledger.add_ops(ops);
    ledger.add_contacts(ops);
    ledger.add_contacts(ops);
    ledger.bits_consumed = repetitions.size();
    ledger.recursion_depth = repetitions.size();
    return ledger;
}

CoolingResult fibonacci_result(const FibRun &run) {
    CoolingResult r;
    r.sequence = run.sequence;
    r.final_bias = Bias(std::min(1.0, r.sequence.back()));
    r.levels = static_cast<double>(r.sequence.size());
    r.bits = r.levels;
    r.bits_ceil = r.sequence.size();
    r.working_register = r.sequence.size();
    r.ledger = fibonacci_ledger(run.repetitions);
    r.reached_target = run.reached_target;
    CostLedger running;
    for (std::size_t j = 0; j < r.sequence.size(); j++) {
        r.trace.push_back({j + 1, j < 2 ? "bath" : "steady_state", {j}, {r.sequence[j]}, running});
    }
    r.trace.back().ledger = r.ledger;
    return r;
}

void fill_level_ledger(CoolingResult &r, std::size_t levels) {
    bool sat = false;
    std::uint64_t leaves = sat_pow3(levels, sat);
    std::uint64_t ops = sat ? U64_MAX : (leaves - 1) / 2;
    r.ledger = CostLedger{};
    r.ledger.add_ops(ops);
    r.ledger.recursion_depth = levels;
    r.ledger.saturated = r.ledger.saturated || sat;
}

void fill_level_trace(CoolingResult &r) {
    // Finishing level l of an L-level tree has used (3^L - 3^(L-l)) / 2 steps.
    std::size_t levels = r.sequence.size() - 1;
    bool sat = false;
    std::uint64_t total = sat_pow3(levels, sat);
    for (std::size_t l = 1; l <= levels; l++) {
        CostLedger running;
        running.add_ops(sat ? U64_MAX : (total - sat_pow3(levels - l, sat)) / 2);
        running.recursion_depth = l;
        running.saturated = running.saturated || sat;
        r.trace.push_back({l, "3bc_level", {}, {r.sequence[l]}, running});
    }
}

}  // namespace

void CostLedger::add_ops(std::uint64_t n) {
    three_bc_ops = sat_add(three_bc_ops, n, saturated);
}

void CostLedger::add_contacts(std::uint64_t n) {
    heat_bath_contacts = sat_add(heat_bath_contacts, n, saturated);
}

RegisterBiases RegisterBiases::fresh(std::size_t n, Bias initial) {
    return {std::vector<Bias>(n, initial), initial};
}

double RegisterBiases::max_bias() const {
    double m = -1.0;
    for (Bias b : biases) {
        m = std::max(m, b.value());
    }
    return m;
}

CoolingResult simple_recursive(Bias b_i, Bias b_t, CountMode mode) {
    require_cooling_targets(b_i, b_t);
    CoolingResult r;
    if (mode == CountMode::APPROX) {
        double k = std::log(b_t.value() / b_i.value()) / std::log(1.5);
        r.levels = k;
        r.bits = std::pow(3.0, k);
        r.bits_ceil = static_cast<std::uint64_t>(std::ceil(r.bits));
        r.final_bias = b_t;
        r.sequence = {b_i.value(), b_t.value()};
        r.ledger.add_ops((r.bits_ceil - 1) / 2);
        r.ledger.recursion_depth = static_cast<std::uint64_t>(std::ceil(k));
        r.ledger.bits_consumed = r.bits_ceil;
        r.working_register = r.bits_ceil;
        r.reached_target = true;
        return r;
    }
    LevelRun run = run_levels(b_i.value(), b_t.value(), [](double b) { return three_bc_bias(Bias(b)).value(); }, false);
    std::size_t levels = run.sequence.size() - 1;
    r.sequence = run.sequence;
    r.final_bias = Bias(run.sequence.back());
    r.levels = static_cast<double>(levels);
    r.bits = std::pow(3.0, r.levels);
    fill_level_ledger(r, levels);
    bool sat = false;
    r.bits_ceil = sat_pow3(levels, sat);
    r.ledger.bits_consumed = r.bits_ceil;
    r.working_register = static_cast<std::size_t>(r.bits_ceil);
    r.reached_target = true;
    fill_level_trace(r);
    return r;
}

CoolingResult heatbath_recursive(Bias b_i, Bias b_t) {
    require_cooling_targets(b_i, b_t);
    CoolingResult r;
    LevelRun run = run_levels(b_i.value(), b_t.value(), [](double b) { return three_bc_bias(Bias(b)).value(); }, false);
    std::size_t levels = run.sequence.size() - 1;
    double k = std::log(b_t.value() / b_i.value()) / std::log(1.5);
    r.sequence = run.sequence;
    r.final_bias = Bias(run.sequence.back());
    r.levels = static_cast<double>(levels);
    r.bits = 2.0 * k;
    r.bits_ceil = static_cast<std::uint64_t>(std::ceil(r.bits));
    fill_level_ledger(r, levels);
    std::uint64_t ops = r.ledger.three_bc_ops;
    r.ledger.add_contacts(ops);
    r.ledger.add_contacts(ops);
    r.ledger.bits_consumed = r.bits_ceil;
    r.working_register = 2 * levels + 1;
    r.reached_target = true;
    fill_level_trace(r);
    return r;
}

CoolingResult execute_heatbath_schedule(
    Bias b_i, unsigned levels, const std::function<void(const RegisterBiases &)> &observer) {
    if (levels > MAX_LITERAL_HEATBATH_LEVELS) {
        throw DomainError("literal heat-bath execution supports at most 10 levels");
    }
    RegisterBiases state = RegisterBiases::fresh(2 * levels + 1, b_i);
    std::vector<std::size_t> free_positions;
    for (std::size_t p = state.biases.size(); p-- > 0;) {
        free_positions.push_back(p);
    }
    CoolingResult r;
    auto make = [&](auto &&self, unsigned level) -> std::size_t {
        if (level == 0) {
            std::size_t p = free_positions.back();
            free_positions.pop_back();
            return p;
        }
        std::size_t p1 = self(self, level - 1);
        std::size_t p2 = self(self, level - 1);
        std::size_t p3 = self(self, level - 1);
        std::size_t out = hb_step(state, p1, p2, p3, &r.ledger);
        for (std::size_t p : {p1, p2, p3}) {
            if (p != out) {
                free_positions.push_back(p);
            }
        }
        r.ledger.recursion_depth = std::max<std::uint64_t>(r.ledger.recursion_depth, level);
        r.trace.push_back({r.trace.size() + 1, "3bc_hb", {p1, p2, p3}, snapshot(state), r.ledger});
        if (observer) {
            observer(state);
        }
        return out;
    };
    std::size_t top = make(make, levels);
    r.final_bias = state.biases[top];
    r.levels = levels;
    r.working_register = state.biases.size();
    r.bits = static_cast<double>(state.biases.size());
    r.bits_ceil = state.biases.size();
    r.ledger.bits_consumed = state.biases.size();
    r.sequence = {b_i.value()};
    for (unsigned l = 0; l < levels; l++) {
        r.sequence.push_back(three_bc_bias(Bias(r.sequence.back())).value());
    }
    r.reached_target = true;
    return r;
}

RegisterBiases three_bc_hb(RegisterBiases state, std::size_t i, std::size_t j, std::size_t k, CostLedger *ledger) {
    hb_step(state, i, j, k, ledger);
    return state;
}

CoolingResult fibonacci_algorithm(unsigned n, Bias b_i, CountMode mode, double tol) {
    if (n < 3) {
        throw DomainError("the Fibonacci schedule needs n >= 3");
    }
    if (mode == CountMode::APPROX) {
        FibRun run;
        for (unsigned j = 1; j <= n; j++) {
            run.sequence.push_back(b_i.value() * static_cast<double>(fibonacci(j)));
            run.repetitions.push_back(j < 3 ? 0 : 1);
        }
        return fibonacci_result(run);
    }
    FibRun run = run_fibonacci(
        b_i.value(), n, 2.0, [](Bias a, Bias b, Bias x) { return three_bc_bias_unequal(a, b, x).value(); }, tol, false);
    return fibonacci_result(run);
}

CoolingResult fibonacci_bits_for_target(Bias b_i, Bias b_t, CountMode mode, double tol) {
    require_cooling_targets(b_i, b_t);
    if (mode == CountMode::APPROX) {
        for (unsigned n = 3; n <= 93; n++) {
            if (b_i.value() * static_cast<double>(fibonacci(n)) >= b_t.value()) {
                CoolingResult r = fibonacci_algorithm(n, b_i, mode, tol);
                r.reached_target = true;
                return r;
            }
        }
        throw DomainError("target needs more than 93 Fibonacci bits");
    }
    FibRun run = run_fibonacci(
        b_i.value(), MAX_LEVELS, b_t.value(),
        [](Bias a, Bias b, Bias x) { return three_bc_bias_unequal(a, b, x).value(); }, tol, false);
    if (!run.reached_target) {
        throw DomainError("Fibonacci schedule did not reach the target");
    }
    return fibonacci_result(run);
}

CoolingResult execute_fibonacci_schedule(
    unsigned n, Bias b_i, unsigned repetitions, const std::function<void(const RegisterBiases &)> &observer) {
    if (n < 3) {
        throw DomainError("the Fibonacci schedule needs n >= 3");
    }
    std::vector<std::size_t> reps(n, repetitions);
    reps[0] = reps[1] = 0;
    CostLedger planned = fibonacci_ledger(reps);
    if (planned.saturated || planned.three_bc_ops > MAX_LITERAL_OPS) {
        throw DomainError("literal Fibonacci schedule would exceed 10^6 steps");
    }
    RegisterBiases state = RegisterBiases::fresh(n, b_i);
    CoolingResult r;
    // Bit j (0-based) is refreshed against bits j-1 and j-2; the result is
    // moved back into slot j so slots keep their roles.
    auto cool = [&](auto &&self, std::size_t j) -> void {
        if (j < 2) {
            return;
        }
        for (unsigned rep = 0; rep < repetitions; rep++) {
            self(self, j - 1);
            self(self, j - 2);
            std::size_t out = hb_step(state, j - 2, j - 1, j, &r.ledger);
            std::swap(state.biases[out], state.biases[j]);
            r.trace.push_back({r.trace.size() + 1, "3bc_hb", {j - 2, j - 1, j}, snapshot(state), r.ledger});
            if (observer) {
                observer(state);
            }
        }
    };
    cool(cool, n - 1);
    r.final_bias = state.biases[n - 1];
    r.levels = n;
    r.bits = n;
    r.bits_ceil = n;
    r.working_register = n;
    r.ledger.bits_consumed = n;
    r.ledger.recursion_depth = n;
    r.sequence = snapshot(state);
    r.reached_target = true;
    return r;
}

BoundCheck fibonacci_bound_check(const RegisterBiases &state) {
    std::vector<double> sorted = snapshot(state);
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t j = 1; j <= sorted.size() && j <= 93; j++) {
        double bound = state.initial_bias.value() * static_cast<double>(fibonacci(static_cast<unsigned>(j)));
        if (sorted[j - 1] > bound + 1e-12) {
            return {false, j, sorted[j - 1], bound};
        }
    }
    return {true, std::nullopt, 0.0, 0.0};
}

std::string_view schedule_name(Schedule schedule) {
    switch (schedule) {
        case Schedule::SIMPLE_RECURSIVE:
            return "simple";
        case Schedule::HEATBATH_RECURSIVE:
            return "heatbath";
        case Schedule::FIBONACCI:
            return "fibonacci";
    }
    return "?";
}

Schedule parse_schedule(std::string_view name) {
    for (auto s : {Schedule::SIMPLE_RECURSIVE, Schedule::HEATBATH_RECURSIVE, Schedule::FIBONACCI}) {
        if (schedule_name(s) == name) {
            return s;
        }
    }
    throw DomainError("unknown schedule: " + std::string(name));
}

CoolingResult run_with_noise(Schedule schedule, Bias b_i, Bias b_t, const BiasUpdateModel &model) {
    require_cooling_targets(b_i, b_t);
    if (schedule == Schedule::FIBONACCI) {
        FibRun run = run_fibonacci(
            b_i.value(), MAX_LEVELS, b_t.value(),
            [&](Bias a, Bias b, Bias x) { return model.update_unequal(a, b, x); }, 1e-12, true);
        CoolingResult r = fibonacci_result(run);
        r.final_bias = Bias(*std::max_element(r.sequence.begin(), r.sequence.end()));
        return r;
    }
    LevelRun run = run_levels(b_i.value(), b_t.value(), [&](double b) { return model.update(b); }, true);
    std::size_t levels = run.sequence.size() - 1;
    CoolingResult r;
    r.sequence = run.sequence;
    r.final_bias = Bias(run.sequence.back());
    r.levels = static_cast<double>(levels);
    r.reached_target = run.reached_target;
    fill_level_ledger(r, levels);
    bool sat = false;
    if (schedule == Schedule::SIMPLE_RECURSIVE) {
        r.bits = std::pow(3.0, r.levels);
        r.bits_ceil = sat_pow3(levels, sat);
        r.working_register = static_cast<std::size_t>(r.bits_ceil);
    } else {
        std::uint64_t ops = r.ledger.three_bc_ops;
        r.ledger.add_contacts(ops);
        r.ledger.add_contacts(ops);
        r.bits = 2.0 * static_cast<double>(levels) + 1.0;
        r.bits_ceil = 2 * levels + 1;
        r.working_register = 2 * levels + 1;
    }
    r.ledger.bits_consumed = r.bits_ceil;
    r.ledger.saturated = r.ledger.saturated || sat;
    fill_level_trace(r);
    return r;
}

}  // namespace hbac
