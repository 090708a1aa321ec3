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

#ifndef HBAC_COOLING_H
#define HBAC_COOLING_H

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hbac/bias.h"
#include "hbac/error_analysis.h"

namespace hbac {

/// Resource counters. Additions saturate at UINT64_MAX and set `saturated`.
struct CostLedger {
    std::uint64_t bits_consumed = 0;
    std::uint64_t three_bc_ops = 0;
    std::uint64_t heat_bath_contacts = 0;
    std::uint64_t recursion_depth = 0;
    bool saturated = false;

    void add_ops(std::uint64_t n);
    void add_contacts(std::uint64_t n);
};

struct TraceStep {
    std::size_t step;
    std::string op;
    std::vector<std::size_t> positions;
    std::vector<double> biases_after;
    CostLedger ledger;
};

struct RegisterBiases {
    std::vector<Bias> biases;
    Bias initial_bias;

    /// n bits, all at the bath bias.
    static RegisterBiases fresh(std::size_t n, Bias initial);
    double max_bias() const;
};

enum class CountMode { APPROX, EXACT };

struct CoolingResult {
    Bias final_bias;
    CostLedger ledger;
    std::vector<TraceStep> trace;
    /// Recursion levels k (real-valued in APPROX mode) or Fibonacci bit count.
    double levels = 0.0;
    /// Bit count as the analysis states it: 3^k, 2k or n.
    double bits = 0.0;
    /// Integer bit count, rounded up.
    std::uint64_t bits_ceil = 0;
    /// Register size the executed schedule actually needs.
    std::size_t working_register = 0;
    /// Bias reached after each level (or each Fibonacci bit B_1, B_2, ...).
    std::vector<double> sequence;
    bool reached_target = false;
};

/// Recursive majority on fresh triplets. APPROX treats each level as a
/// factor 3/2 on the bias.
CoolingResult simple_recursive(Bias b_i, Bias b_t, CountMode mode);

/// Recursive majority that returns used bits to the bath. `bits` is 2k with
/// the real-valued k of the 3/2 approximation; `levels`, the ledger and
/// `working_register` (2L + 1) come from the exact level count L.
CoolingResult heatbath_recursive(Bias b_i, Bias b_t);

/// Depth-first execution of an L-level heat-bath schedule on a register of
/// 2L + 1 bits, one three_bc_hb per majority step. `observer`, if set, sees
/// the register after every step. Supports levels <= 10.
CoolingResult execute_heatbath_schedule(
    Bias b_i, unsigned levels, const std::function<void(const RegisterBiases &)> &observer = {});

/// Majority of the three positions under bath resets: the position holding
/// the largest bias (the last one among equals, in argument order) gets the
/// unequal-bias majority; the other two go back to the bath bias.
RegisterBiases three_bc_hb(RegisterBiases state, std::size_t i, std::size_t j, std::size_t k, CostLedger *ledger = nullptr);

/// B_1 .. B_n. APPROX: b_i F(j). EXACT: B_1 = B_2 = b_i and each further bit
/// is driven to its steady state against the previous two by repeated
/// majority steps until the change drops below tol. The ledger charges each
/// repetition with re-preparing the two lower bits.
CoolingResult fibonacci_algorithm(unsigned n, Bias b_i, CountMode mode, double tol = 1e-12);

/// Smallest n >= 3 with B_n >= b_t.
CoolingResult fibonacci_bits_for_target(Bias b_i, Bias b_t, CountMode mode, double tol = 1e-12);

/// Literal Fibonacci schedule on n bits: bit j is refreshed `repetitions`
/// times, each time after recursively re-cooling bits j-1 and j-2.
CoolingResult execute_fibonacci_schedule(
    unsigned n, Bias b_i, unsigned repetitions, const std::function<void(const RegisterBiases &)> &observer = {});

struct BoundCheck {
    bool pass;
    /// 1-based sorted index of the first violation.
    std::optional<std::size_t> witness;
    double value = 0.0;
    double bound = 0.0;
};

/// Sorts the biases and checks B_j <= b_i F(j) (absolute slack 1e-12).
BoundCheck fibonacci_bound_check(const RegisterBiases &state);

enum class Schedule { SIMPLE_RECURSIVE, HEATBATH_RECURSIVE, FIBONACCI };

std::string_view schedule_name(Schedule schedule);
/// Accepts "simple", "heatbath", "fibonacci".
Schedule parse_schedule(std::string_view name);

/// Runs the schedule with every majority step replaced by the model's noisy
/// update. Stops at b_t or as soon as a step no longer raises the best bias.
CoolingResult run_with_noise(Schedule schedule, Bias b_i, Bias b_t, const BiasUpdateModel &model);

}  // namespace hbac

#endif
