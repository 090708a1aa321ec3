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

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "doctest.h"
#include "hbac/bias.h"
#include "hbac/cooling.h"
#include "hbac/error_analysis.h"
#include "oracles.h"

using doctest::Approx;
using namespace hbac;

namespace {

RegisterBiases register_of(std::vector<double> values, double initial) {
    RegisterBiases r = RegisterBiases::fresh(values.size(), Bias(initial));
    for (std::size_t i = 0; i < values.size(); i++) {
        r.biases[i] = Bias(values[i]);
    }
    return r;
}

BiasUpdateModel sym_after(double eps) {
    return BiasUpdateModel(NoiseModel::SYM_AFTER, ErrorRates::symmetric(eps));
}

}  // namespace

TEST_CASE("cost ledger saturates") {
    CostLedger l;
    l.add_ops(std::numeric_limits<std::uint64_t>::max());
    CHECK_FALSE(l.saturated);
    l.add_ops(1);
    CHECK(l.saturated);
    CHECK(l.three_bc_ops == std::numeric_limits<std::uint64_t>::max());
}

TEST_CASE("simple recursive bit counts") {
    auto a = simple_recursive(Bias(1e-5), Bias(0.1), CountMode::APPROX);
    CHECK(a.bits == Approx(6.9e10).epsilon(0.05));
    CHECK(a.levels == Approx(std::log(1e4) / std::log(1.5)).epsilon(1e-14));
    CHECK(a.bits_ceil == static_cast<std::uint64_t>(std::ceil(a.bits)));
    auto b = simple_recursive(Bias(1e-5), Bias(0.9999), CountMode::APPROX);
    CHECK(b.bits == Approx(3.5e13).epsilon(0.05));

    auto e = simple_recursive(Bias(0.5), Bias(0.6), CountMode::EXACT);
    CHECK(e.levels == 1.0);
    CHECK(e.bits == 3.0);
    CHECK(e.bits_ceil == 3);
    CHECK(e.final_bias.value() == 0.6875);
    CHECK(e.ledger.three_bc_ops == 1);

    auto deep = simple_recursive(Bias(1e-5), Bias(0.9999), CountMode::EXACT);
    CHECK(deep.levels == 32.0);
    CHECK(deep.final_bias.value() >= 0.9999);
    CHECK(deep.ledger.three_bc_ops == (deep.bits_ceil - 1) / 2);
    REQUIRE(deep.trace.size() == 32);
    CHECK(deep.trace.back().ledger.three_bc_ops == deep.ledger.three_bc_ops);

    CHECK_THROWS_AS(simple_recursive(Bias(0.1), Bias(1.0), CountMode::EXACT), DomainError);
    CHECK_THROWS_AS(simple_recursive(Bias(0.2), Bias(0.1), CountMode::APPROX), DomainError);
}

TEST_CASE("heat-bath recursive bit counts") {
    auto a = heatbath_recursive(Bias(1e-5), Bias(0.1));
    CHECK(std::abs(a.bits - 46.0) <= 2.0);
    CHECK(a.levels == 23.0);
    CHECK(a.working_register == 47);
    CHECK(a.ledger.heat_bath_contacts > 0);
    CHECK(a.ledger.heat_bath_contacts == 2 * a.ledger.three_bc_ops);
    auto b = heatbath_recursive(Bias(1e-5), Bias(0.9999));
    CHECK(std::abs(b.bits - 57.0) <= 2.0);
    CHECK(b.bits_ceil == 57);
    CHECK(b.levels == 32.0);
}

TEST_CASE("literal heat-bath schedule agrees with the level recursion") {
    for (unsigned levels = 1; levels <= 6; levels++) {
        double max_seen = 0.0;
        bool monotone = true;
        bool bound_ok = true;
        auto run = execute_heatbath_schedule(Bias(0.05), levels, [&](const RegisterBiases &s) {
            monotone = monotone && s.max_bias() >= max_seen;
            max_seen = std::max(max_seen, s.max_bias());
            bound_ok = bound_ok && fibonacci_bound_check(s).pass;
        });
        CHECK(monotone);
        CHECK(bound_ok);
        CHECK(run.working_register == 2 * levels + 1);
        CHECK(run.ledger.three_bc_ops == (static_cast<std::uint64_t>(std::pow(3, levels)) - 1) / 2);
        double expect = 0.05;
        for (unsigned l = 0; l < levels; l++) {
            expect = oracle::majority_bias(expect, expect, expect);
        }
        CHECK(run.final_bias.value() == Approx(expect).epsilon(1e-14));
    }
    CHECK_THROWS_AS(execute_heatbath_schedule(Bias(0.05), 11), DomainError);
}

TEST_CASE("majority under bath resets") {
    auto s = three_bc_hb(register_of({0.2, 0.4, 0.6}, 0.1), 0, 1, 2);
    CHECK(s.biases[0].value() == 0.1);
    CHECK(s.biases[1].value() == 0.1);
    CHECK(s.biases[2].value() == Approx(0.576).epsilon(1e-15));

    auto shuffled = three_bc_hb(register_of({0.6, 0.2, 0.4}, 0.1), 2, 0, 1);
    CHECK(shuffled.biases[0].value() == Approx(0.576).epsilon(1e-15));
    CHECK(shuffled.biases[1].value() == 0.1);
    CHECK(shuffled.biases[2].value() == 0.1);

    CostLedger ledger;
    auto eq = three_bc_hb(RegisterBiases::fresh(3, Bias(0.3)), 0, 1, 2, &ledger);
    CHECK(eq.biases[0].value() == 0.3);
    CHECK(eq.biases[1].value() == 0.3);
    CHECK(eq.biases[2].value() == Approx(three_bc_bias(Bias(0.3)).value()).epsilon(1e-15));
    CHECK(ledger.three_bc_ops == 1);
    CHECK(ledger.heat_bath_contacts == 2);

    auto top = three_bc_hb(register_of({1.0, 1.0, 1.0}, 0.1), 0, 1, 2);
    CHECK(top.biases[2].value() <= 1.0);
    CHECK_THROWS_AS(three_bc_hb(RegisterBiases::fresh(3, Bias(0.1)), 0, 0, 2), DomainError);
    CHECK_THROWS_AS(three_bc_hb(RegisterBiases::fresh(3, Bias(0.1)), 0, 1, 3), DomainError);
}

TEST_CASE("fibonacci schedule") {
    auto approx = fibonacci_bits_for_target(Bias(1e-5), Bias(0.1), CountMode::APPROX);
    CHECK(approx.levels == 21.0);
    CHECK(std::abs(approx.levels - 20.0) <= 2.0);
    auto exact = fibonacci_bits_for_target(Bias(1e-5), Bias(0.9999), CountMode::EXACT);
    CHECK(exact.levels >= 26.0);
    CHECK(exact.levels <= 30.0);
    CHECK(exact.final_bias.value() >= 0.9999);
    CHECK(exact.sequence[exact.sequence.size() - 2] < 0.9999);

    auto three = fibonacci_algorithm(3, Bias(0.5), CountMode::EXACT);
    CHECK(three.sequence[2] == Approx(0.8).epsilon(1e-12));
    CHECK(three.sequence[2] == Approx(steady_state_bias(Bias(0.5), Bias(0.5)).value()).epsilon(1e-12));

    auto lin = fibonacci_algorithm(15, Bias(1e-5), CountMode::EXACT);
    for (unsigned j = 1; j <= 15; j++) {
        double bj = lin.sequence[j - 1];
        CHECK(std::abs(bj - 1e-5 * static_cast<double>(fibonacci(j))) / bj < 1e-4);
    }

    // From 1e-3 the recurrence is within one ulp of 1 by j = 22.
    auto long_run = fibonacci_algorithm(22, Bias(1e-3), CountMode::EXACT);
    for (std::size_t j = 2; j < long_run.sequence.size(); j++) {
        CHECK(long_run.sequence[j] < 1.0);
        CHECK(long_run.sequence[j] > long_run.sequence[j - 1]);
    }
    CHECK(long_run.sequence.back() > 0.999999);
    CHECK_THROWS_AS(fibonacci_algorithm(2, Bias(0.1), CountMode::EXACT), DomainError);
}

TEST_CASE("literal fibonacci schedule converges to the steady-state recurrence") {
    auto exact = fibonacci_algorithm(6, Bias(0.3), CountMode::EXACT);
    bool bound_ok = true;
    auto run = execute_fibonacci_schedule(6, Bias(0.3), 12, [&](const RegisterBiases &s) {
        bound_ok = bound_ok && fibonacci_bound_check(s).pass;
    });
    CHECK(bound_ok);
    // Only the top bit survives; the lower ones went back to the bath.
    CHECK(std::abs(run.final_bias.value() - exact.sequence[5]) < 1e-3);
    CHECK(run.final_bias.value() <= exact.sequence[5]);
    CHECK_THROWS_AS(execute_fibonacci_schedule(12, Bias(0.3), 30), DomainError);
}

TEST_CASE("fibonacci bound check") {
    auto ok = fibonacci_bound_check(register_of({0.2, 0.1, 0.1}, 0.1));
    CHECK(ok.pass);
    CHECK_FALSE(ok.witness.has_value());
    auto bad = fibonacci_bound_check(register_of({0.25, 0.1}, 0.1));
    CHECK_FALSE(bad.pass);
    REQUIRE(bad.witness.has_value());
    CHECK(*bad.witness == 2);
    CHECK(bad.bound == Approx(0.1));
    CHECK(bad.value == Approx(0.25));
}

TEST_CASE("noisy runs") {
    auto clean = simple_recursive(Bias(1e-5), Bias(0.9999), CountMode::EXACT);
    for (auto schedule : {Schedule::SIMPLE_RECURSIVE, Schedule::HEATBATH_RECURSIVE}) {
        auto noisy = run_with_noise(schedule, Bias(1e-5), Bias(0.9999), sym_after(0.0));
        CHECK(noisy.sequence == clean.sequence);
        CHECK(noisy.reached_target);
    }
    auto fclean = fibonacci_bits_for_target(Bias(1e-5), Bias(0.9999), CountMode::EXACT);
    auto fnoisy = run_with_noise(Schedule::FIBONACCI, Bias(1e-5), Bias(0.9999), sym_after(0.0));
    CHECK(fnoisy.sequence == fclean.sequence);

    for (double eps : {0.001, 0.01}) {
        auto r = run_with_noise(Schedule::SIMPLE_RECURSIVE, Bias(1e-5), Bias(0.99999), sym_after(eps));
        CHECK_FALSE(r.reached_target);
        CHECK(std::abs(r.final_bias.value() - blim_sym_after(eps).value()) < 1e-6);
        CHECK(r.final_bias.value() <= blim_sym_after(eps).value() + 1e-9);
        ErrorRates rates = ErrorRates::from_sum_difference(2.0 * eps, eps);
        auto a = run_with_noise(Schedule::HEATBATH_RECURSIVE, Bias(1e-5), Bias(0.99999),
                                BiasUpdateModel(NoiseModel::ASYM_AFTER, rates));
        CHECK(std::abs(a.final_bias.value() - blim_asym_after(rates).value()) < 1e-6);
        CHECK(a.ledger.heat_bath_contacts > 0);
    }

    ErrorRates rates = ErrorRates::from_sum_difference(0.2, 0.1);
    auto fib = run_with_noise(Schedule::FIBONACCI, Bias(0.5), Bias(0.99), BiasUpdateModel(NoiseModel::ASYM_AFTER, rates));
    REQUIRE(fib.sequence.size() >= 3);
    CHECK(fib.sequence[2] == Approx(5.0 / 7.0).epsilon(1e-9));
    for (std::size_t j = 2; j < fib.sequence.size(); j++) {
        double a = fib.sequence[j - 2];
        double b = fib.sequence[j - 1];
        double direct = oracle::iterate(
            [&](double x) {
                return oracle::flip_chain(oracle::majority_bias(a, b, x), rates.eps0(), rates.eps1());
            },
            0.5);
        CHECK(std::abs(fib.sequence[j] - steady_state_bias_noisy(Bias(a), Bias(b), rates).value()) < 1e-9);
        CHECK(std::abs(fib.sequence[j] - direct) < 1e-9);
    }
    CHECK_THROWS_AS(run_with_noise(Schedule::FIBONACCI, Bias(0.5), Bias(0.4), sym_after(0.01)), DomainError);
    CHECK(parse_schedule("heatbath") == Schedule::HEATBATH_RECURSIVE);
    CHECK_THROWS_AS(parse_schedule("bubble"), DomainError);
}
