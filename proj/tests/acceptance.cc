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

// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.
// Exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "hbac/bias.h"
#include "hbac/cooling.h"
#include "hbac/distribution.h"
#include "hbac/enumeration.h"
#include "hbac/error_analysis.h"
#include "hbac/majority.h"
#include "hbac/tape.h"
#include "oracles.h"

using namespace hbac;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char *format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

double millis_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

Outcome bit_counts_simple() {
    auto start = std::chrono::steady_clock::now();
    double low = simple_recursive(Bias(1e-5), Bias(0.1), CountMode::APPROX).bits;
    double high = simple_recursive(Bias(1e-5), Bias(0.9999), CountMode::APPROX).bits;
    double ms = millis_since(start);
    bool ok = std::abs(low / 6.9e10 - 1.0) <= 0.05 && std::abs(high / 3.5e13 - 1.0) <= 0.05 && ms < 1.0;
    return {ok, fmt("bits(0.1)=%.4g bits(0.9999)=%.4g time=%.3fms", low, high, ms)};
}

Outcome bit_counts_heatbath() {
    auto start = std::chrono::steady_clock::now();
    double hb_low = heatbath_recursive(Bias(1e-5), Bias(0.1)).bits;
    double hb_high = heatbath_recursive(Bias(1e-5), Bias(0.9999)).bits;
    double fib_low = fibonacci_bits_for_target(Bias(1e-5), Bias(0.1), CountMode::APPROX).levels;
    double fib_high = fibonacci_bits_for_target(Bias(1e-5), Bias(0.9999), CountMode::EXACT).levels;
    double ms = millis_since(start);
    bool ok = std::abs(hb_low - 46.0) <= 2.0 && std::abs(hb_high - 57.0) <= 2.0 && std::abs(fib_low - 20.0) <= 2.0 &&
              fib_high >= 26.0 && fib_high <= 30.0 && ms < 10.0;
    return {ok, fmt("heatbath 2k=%.2f, %.2f; fibonacci n=%.0f (approx, 0.1), n=%.0f (exact, 0.9999); time=%.3fms",
                    hb_low, hb_high, fib_low, fib_high, ms)};
}

Outcome thresholds() {
    auto start = std::chrono::steady_clock::now();
    double after = threshold_sym_after();
    double during = threshold_sym_during();
    Circuit toffoli = majority_circuit_cnot_toffoli();
    double b = 1e-3;
    double below = enumerate_noisy_output_bias(toffoli, Bias(b), ErrorRates::symmetric(during - 1e-5)).value() - b;
    double above = enumerate_noisy_output_bias(toffoli, Bias(b), ErrorRates::symmetric(during + 1e-5)).value() - b;
    double ms = millis_since(start);
    bool ok = after == 1.0 / 6.0 && std::abs(during - 0.048592) <= 1e-6 && below > 0.0 && above < 0.0 && ms < 1000.0;
    return {ok, fmt("sym-after=%.17g sym-during=%.15f improvement below=%.3g above=%.3g time=%.1fms", after, during,
                    below, above, ms)};
}

Outcome closed_form_vs_enumeration() {
    auto start = std::chrono::steady_clock::now();
    Circuit toffoli = majority_circuit_cnot_toffoli();
    double sym_gap = 0.0;
    for (double b : {0.1, 0.5, 0.9}) {
        for (double eps : {0.001, 0.01, 0.04}) {
            double e = enumerate_noisy_output_bias(toffoli, Bias(b), ErrorRates::symmetric(eps)).value();
            sym_gap = std::max(sym_gap, std::abs(e - newbias_sym_during(Bias(b), eps).value()));
        }
    }
    struct Point {
        double s, d, tol, gap = 0.0, at = 0.0;
    };
    std::vector<Point> points = {{0.02, 0.01, 1e-4}, {0.002, 0.001, 1e-7}};
    bool asym_ok = true;
    for (auto &p : points) {
        ErrorRates r = ErrorRates::from_sum_difference(p.s, p.d);
        for (double b : {0.1, 0.5, 0.9}) {
            double e = enumerate_noisy_output_bias(toffoli, Bias(b), r).value();
            double gap = std::abs(e - newbias_asym_during(Bias(b), r, Approximation::SECOND_ORDER));
            if (gap > p.gap) {
                p.gap = gap;
                p.at = b;
            }
        }
        asym_ok = asym_ok && p.gap <= p.tol;
    }
    double ms = millis_since(start);
    bool ok = sym_gap <= 1e-12 && asym_ok && ms < 1000.0;
    return {ok, fmt("sym max gap=%.3g; asym (0.02,0.01) max gap=%.3g at B=%.1f (tol 1e-4); "
                    "asym (0.002,0.001) max gap=%.3g at B=%.1f (tol 1e-7); time=%.1fms",
                    sym_gap, points[0].gap, points[0].at, points[1].gap, points[1].at, ms)};
}

Outcome approximation_quality() {
    double after_rel = 0.0, during_rel = 0.0, during_at = 0.0;
    for (int k = 1; k <= 100; k++) {
        double eps = k * 1e-4;
        double x = blim_sym_after(eps).value();
        after_rel = std::max(after_rel, std::abs(x - blim_sym_after_second_order(eps)) / x);
        double y = blim_sym_during(eps).value();
        double rel = std::abs(y - blim_sym_during_second_order(eps)) / y;
        if (rel > during_rel) {
            during_rel = rel;
            during_at = eps;
        }
    }
    // Error rates eps0 <= eps1 <= 1% on a 0.001 grid.
    double asym_after = 0.0, asym_during = 0.0;
    ErrorRates after_at, during_worst;
    for (int i = 0; i <= 10; i++) {
        for (int j = i; j <= 10; j++) {
            if (j == 0) {
                continue;
            }
            ErrorRates r(i * 1e-3, j * 1e-3);
            double ga = std::abs(blim_asym_after(r).value() - blim_asym_after_second_order(r));
            if (ga > asym_after) {
                asym_after = ga;
                after_at = r;
            }
            double gd = std::abs(blim_asym_during(r).value() - blim_asym_during_second_order(r));
            if (gd > asym_during) {
                asym_during = gd;
                during_worst = r;
            }
        }
    }
    bool ok = after_rel <= 1e-4 && during_rel <= 1e-3 && asym_after <= 1e-5 && asym_during <= 1e-4;
    return {ok, fmt("sym-after max rel=%.3g (tol 1e-4); sym-during max rel=%.4g at eps=%.4f (tol 1e-3); "
                    "asym-after max abs=%.3g at eps0=%.3f eps1=%.3f (tol 1e-5); "
                    "asym-during max abs=%.3g at eps0=%.3f eps1=%.3f (tol 1e-4)",
                    after_rel, during_rel, during_at, asym_after, after_at.eps0(), after_at.eps1(), asym_during,
                    during_worst.eps0(), during_worst.eps1())};
}

Outcome permutation_search() {
    auto start = std::chrono::steady_clock::now();
    PermutationSearch s = exhaustive_best_first_bit_bias(3, Bias(0.5));
    double ms = millis_since(start);
    bool ok = s.best_bias.value() == 0.6875 && s.best_bias == three_bc_bias(Bias(0.5)) && s.candidates == 40320 &&
              ms < 10000.0;
    return {ok, fmt("best=%.17g over %llu permutations; time=%.1fms", s.best_bias.value(),
                    static_cast<unsigned long long>(s.candidates), ms)};
}

Outcome bound_fuzz() {
    auto start = std::chrono::steady_clock::now();
    oracle::Gen gen(0);
    std::size_t checks = 0, violations = 0;
    for (int trace = 0; trace < 10000; trace++) {
        std::size_t n = 3 + gen.index(6);
        RegisterBiases state = RegisterBiases::fresh(n, Bias(gen.uniform(1e-4, 0.5)));
        std::size_t steps = 1 + gen.index(20);
        for (std::size_t step = 0; step < steps; step++) {
            std::vector<std::size_t> p = gen.permutation(n);
            state = three_bc_hb(state, p[0], p[1], p[2]);
            std::vector<std::size_t> perm = gen.permutation(n);
            RegisterBiases moved = state;
            for (std::size_t i = 0; i < n; i++) {
                moved.biases[perm[i]] = state.biases[i];
            }
            state = moved;
            checks++;
            violations += fibonacci_bound_check(state).pass ? 0 : 1;
        }
    }
    double ms = millis_since(start);
    return {violations == 0 && ms < 10000.0,
            fmt("10000 traces, %zu states checked, %zu violations; time=%.1fms", checks, violations, ms)};
}

Outcome circuit_equivalences() {
    Circuit cswap = majority_circuit_cswap();
    Circuit toffoli = majority_circuit_cnot_toffoli();
    double gap = 0.0;
    std::vector<double> grid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    for (double ba : grid) {
        for (double bb : grid) {
            for (double bc : grid) {
                std::vector<Bias> in = {Bias(ba), Bias(bb), Bias(bc)};
                JointDistribution d = product_distribution(in);
                double m2 = marginal_bias(propagate(cswap, d), WIRE_A).value();
                double m3 = marginal_bias(propagate(toffoli, d), WIRE_A).value();
                gap = std::max(gap, std::abs(m2 - m3));
            }
        }
    }
    Circuit cnot_cswap = cnot_cswap_circuit();
    int cnot_cswap_bad = 0;
    for (BasisState x = 0; x < 8; x++) {
        bool b1 = x & 1, b2 = (x >> 1) & 1, c = (x >> 2) & 1;
        bool out = (cnot_cswap.run(x) >> 2) & 1;
        cnot_cswap_bad += (out == majority3(b1, b2, c) && cnot_cswap_majority(b1, b2, c) == majority3(b1, b2, c)) ? 0 : 1;
    }
    int tuples_bad = 0;
    for (int x = 0; x < 8; x++) {
        for (int pat = 0; pat < 128; pat++) {
            int e[7];
            for (int k = 0; k < 7; k++) {
                e[k] = (pat >> k) & 1;
            }
            int gate_level = static_cast<int>(toffoli.run(static_cast<BasisState>(x), static_cast<std::uint64_t>(pat)) & 1);
            tuples_bad += gate_level == oracle::final_a(x & 1, (x >> 1) & 1, (x >> 2) & 1, e) ? 0 : 1;
        }
    }
    bool ok = gap <= 1e-12 && cnot_cswap_bad == 0 && tuples_bad == 0;
    return {ok, fmt("cswap/toffoli marginal max gap=%.3g over 729 inputs; cnot+cswap mismatches=%d/8; "
                    "algebraic mismatches=%d/1024",
                    gap, cnot_cswap_bad, tuples_bad)};
}

Outcome tape_machine() {
    auto start = std::chrono::steady_clock::now();
    int shift_bad = 0, swap_bad = 0, cool_bad = 0;
    for (std::size_t head = 0; head < 3; head++) {
        for (std::size_t x = 0; x < 512; x++) {
            std::vector<bool> v(9);
            for (std::size_t i = 0; i < 9; i++) {
                v[i] = (x >> i) & 1;
            }
            ChainLoop loop(3, head, v);
            ChainLoop shifted = loop;
            shifted.run(shift_sequence(Species::B, Direction::FORWARD));
            for (std::size_t t = 0; t < 3; t++) {
                bool a_ok = shifted.values()[3 * t] == v[3 * ((t + 1) % 3)];
                bool b_ok = shifted.values()[3 * t + 1] == v[3 * t + 1];
                bool c_ok = shifted.values()[3 * t + 2] == v[3 * ((t + 2) % 3) + 2];
                shift_bad += (a_ok && b_ok && c_ok) ? 0 : 1;
            }
            for (std::size_t pos = 0; pos < 9; pos++) {
                std::vector<bool> want = v;
                std::swap(want[pos], want[(pos + 1) % 9]);
                ChainLoop after = swap_adjacent(loop, pos).loop;
                std::vector<std::size_t> ids(9);
                for (std::size_t i = 0; i < 9; i++) {
                    ids[i] = i;
                }
                std::swap(ids[pos], ids[(pos + 1) % 9]);
                swap_bad += (after.values() == want && after.ids() == ids) ? 0 : 1;
            }
        }
        Circuit toffoli = majority_circuit_cnot_toffoli();
        for (std::array<std::size_t, 3> pos : {std::array<std::size_t, 3>{0, 1, 2}, {4, 8, 6}, {2, 0, 7}}) {
            for (BasisState x = 0; x < 8; x++) {
                std::vector<bool> v(9, false);
                for (std::size_t k = 0; k < 3; k++) {
                    v[pos[k]] = (x >> k) & 1;
                }
                ChainLoop loop(3, head, v);
                loop.run(compile_cooling_step(loop, pos));
                BasisState out = toffoli.run(x);
                for (std::size_t k = 0; k < 3; k++) {
                    cool_bad += loop.values()[pos[k]] == static_cast<bool>((out >> k) & 1) ? 0 : 1;
                }
            }
        }
    }
    double ms = millis_since(start);
    bool ok = shift_bad == 0 && swap_bad == 0 && cool_bad == 0 && ms < 5000.0;
    return {ok, fmt("shift mismatches=%d, swap_adjacent mismatches=%d, cooling-step mismatches=%d; time=%.1fms",
                    shift_bad, swap_bad, cool_bad, ms)};
}

Outcome noisy_saturation() {
    auto sa = run_with_noise(Schedule::SIMPLE_RECURSIVE, Bias(1e-5), Bias(0.99999),
                             BiasUpdateModel(NoiseModel::SYM_AFTER, ErrorRates::symmetric(0.01)));
    double sa_gap = std::abs(sa.final_bias.value() - blim_sym_after(0.01).value());
    ErrorRates r = ErrorRates::from_sum_difference(0.02, 0.01);
    auto aa = run_with_noise(Schedule::SIMPLE_RECURSIVE, Bias(1e-5), Bias(0.99999),
                             BiasUpdateModel(NoiseModel::ASYM_AFTER, r));
    double aa_gap = std::abs(aa.final_bias.value() - blim_asym_after(r).value());
    oracle::Gen gen(5);
    double fp_gap = 0.0;
    for (int k = 0; k < 1000; k++) {
        Bias a(gen.uniform(0.0, 1.0)), b(gen.uniform(0.0, 1.0));
        ErrorRates q(gen.uniform(0.0, 0.2), gen.uniform(0.0, 0.2));
        Bias x = steady_state_bias_noisy(a, b, q);
        double image = oracle::flip_chain(oracle::majority_bias(a.value(), b.value(), x.value()), q.eps0(), q.eps1());
        fp_gap = std::max(fp_gap, std::abs(image - x.value()));
    }
    bool ok = sa_gap <= 1e-6 && aa_gap <= 1e-6 && fp_gap <= 1e-9;
    return {ok, fmt("sym-after gap=%.3g, asym-after gap=%.3g, steady-state fixed-point residual=%.3g", sa_gap, aa_gap,
                    fp_gap)};
}

}  // namespace

int main() {
    std::vector<std::pair<const char *, std::function<Outcome()>>> criteria = {
        {"bit counts, simple recursion", bit_counts_simple},
        {"bit counts, heat-bath and Fibonacci", bit_counts_heatbath},
        {"thresholds", thresholds},
        {"closed forms vs enumeration", closed_form_vs_enumeration},
        {"second-order approximation quality", approximation_quality},
        {"optimal 3-bit permutation", permutation_search},
        {"Fibonacci bound on random traces", bound_fuzz},
        {"circuit equivalences", circuit_equivalences},
        {"tape machine", tape_machine},
        {"noisy-run saturation", noisy_saturation},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); i++) {
        Outcome o = criteria[i].second();
        std::printf("criterion %2zu %s: %s (%s)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, o.detail.c_str());
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
