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

// Randomised and grid property checks. Generators are seeded so failures
// reproduce.

#include <cmath>
#include <vector>

#include "doctest.h"
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

std::vector<Gate> sample_gates(std::size_t width, oracle::Gen &gen, std::size_t count) {
    std::vector<Gate> out;
    for (std::size_t i = 0; i < count; i++) {
        std::vector<std::size_t> wires = gen.permutation(width);
        switch (gen.index(5)) {
            case 0:
                out.push_back(Gate::x(wires[0]));
                break;
            case 1:
                out.push_back(Gate::cnot(wires[0], wires[1]));
                break;
            case 2:
                out.push_back(Gate::toffoli({{wires[0], gen.index(2) == 1}, {wires[1], true}}, wires[2]));
                break;
            case 3:
                out.push_back(Gate::swap(wires[0], wires[1]));
                break;
            default:
                out.push_back(Gate::cswap({{wires[0], gen.index(2) == 1}}, wires[1], wires[2]));
                break;
        }
    }
    return out;
}

JointDistribution random_distribution(std::size_t width, oracle::Gen &gen) {
    std::vector<double> p(std::size_t{1} << width);
    double total = 0.0;
    for (double &x : p) {
        x = gen.uniform(0.0, 1.0);
        total += x;
    }
    for (double &x : p) {
        x /= total;
    }
    return JointDistribution(std::move(p));
}

}  // namespace

TEST_CASE("bias-core invariants on a fine grid") {
    for (int i = 1; i < 10000; i++) {
        double b = i / 10000.0;
        CHECK(three_bc_bias(Bias(b)).value() > b);
        CHECK(two_bc_accept_bias(Bias(b)).value() > b);
        CHECK(three_bc_bias(Bias(-b)).value() == -three_bc_bias(Bias(b)).value());
    }
    for (int i = -1000; i <= 1000; i++) {
        double b = i / 1000.0;
        bool fixed = three_bc_bias(Bias(b)).value() == b;
        CHECK(fixed == (i == -1000 || i == 0 || i == 1000));
    }
}

TEST_CASE("steady states and debiasing") {
    oracle::Gen gen(1);
    for (int trial = 0; trial < 2000; trial++) {
        Bias a(gen.uniform(0.0, 1.0));
        Bias b(gen.uniform(0.0, 1.0));
        Bias ss = steady_state_bias(a, b);
        CHECK(std::abs(three_bc_bias_unequal(a, b, ss).value() - ss.value()) < 1e-12);
        CHECK(std::abs(three_bc_bias_unequal(a, b, ss).value() - oracle::majority_bias(a.value(), b.value(), ss.value())) <
              1e-12);

        ErrorRates r(gen.uniform(0.0, 0.2), gen.uniform(0.0, 0.2));
        if (r.s() == 0.0) {
            continue;
        }
        Bias x(gen.uniform(-1.0, 1.0));
        double centre = r.d() / r.s();
        CHECK(std::abs(std::abs(debias_step(x, r).value() - centre) - (1.0 - r.s()) * std::abs(x.value() - centre)) <
              1e-12);
        CHECK(std::abs(debias_step(x, r).value() - oracle::flip_chain(x.value(), r.eps0(), r.eps1())) < 1e-12);

        Bias noisy = steady_state_bias_noisy(a, b, r);
        CHECK(std::abs(debias_step(three_bc_bias_unequal(a, b, noisy), r).value() - noisy.value()) < 1e-12);
    }
}

TEST_CASE("gates conserve probability and are involutions") {
    oracle::Gen gen(2);
    for (int trial = 0; trial < 300; trial++) {
        std::size_t width = 3 + gen.index(4);
        JointDistribution dist = random_distribution(width, gen);
        for (const Gate &g : sample_gates(width, gen, 4)) {
            JointDistribution once = apply_gate(dist, g);
            CHECK(std::abs(once.total() - 1.0) < 1e-12);
            JointDistribution twice = apply_gate(once, g);
            CHECK(std::equal(twice.probs().begin(), twice.probs().end(), dist.probs().begin()));
            for (BasisState s = 0; s < (BasisState{1} << width); s++) {
                CHECK(g.apply(g.apply(s)) == s);
            }
            ErrorRates r(gen.uniform(0.0, 0.5), gen.uniform(0.0, 0.5));
            JointDistribution noisy = apply_bitflip_channel(dist, gen.index(width), r);
            CHECK(std::abs(noisy.total() - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("error-pattern probabilities sum to one") {
    for (double eps : {0.0, 0.001, 0.01, 0.1, 0.3, 0.49}) {
        double total = 0.0;
        for (std::uint64_t i = 0; i < 128; i++) {
            total += ErrorPattern{i, 7}.symmetric_probability(eps);
        }
        CHECK(std::abs(total - 1.0) < 1e-12);
    }
}

TEST_CASE("every limit is the attracting upper fixed point of its update") {
    struct Case {
        BiasUpdateModel model;
        double limit;
    };
    std::vector<Case> cases;
    for (double eps : {0.001, 0.01, 0.04, 0.06, 0.1, 0.2}) {
        ErrorRates r = ErrorRates::symmetric(eps);
        cases.push_back({BiasUpdateModel(NoiseModel::SYM_AFTER, r), blim_sym_after(eps).value()});
        cases.push_back({BiasUpdateModel(NoiseModel::SYM_DURING, r), blim_sym_during(eps).value()});
    }
    for (double s : {0.002, 0.02, 0.05}) {
        for (double frac : {0.0, 0.25, 0.5, 0.9}) {
            ErrorRates r = ErrorRates::from_sum_difference(s, frac * s);
            cases.push_back({BiasUpdateModel(NoiseModel::ASYM_AFTER, r), blim_asym_after(r).value()});
            cases.push_back(
                {BiasUpdateModel(NoiseModel::ASYM_DURING, r, Approximation::SECOND_ORDER), blim_asym_during(r).value()});
            BiasUpdateModel exact(NoiseModel::ASYM_DURING, r);
            cases.push_back({exact, generic_limit([&](double b) { return exact.update(b); })});
        }
    }
    for (const auto &c : cases) {
        const ErrorRates &r = c.model.rates;
        double lo = r.s() > 0.0 ? r.d() / r.s() * (1.0 + 1e-9) : 0.0;
        double below_hi = c.limit * (1.0 - 1e-9);
        double above_lo = std::max(lo, c.limit * (1.0 + 1e-9));
        for (int k = 1; k < 200; k++) {
            double t = k / 200.0;
            double b = lo + (below_hi - lo) * t;
            if (b > lo && b < below_hi) {
                CHECK(c.model.update(b) > b);
            }
            double u = above_lo + (1.0 - above_lo) * t;
            if (u > above_lo && u < 1.0) {
                CHECK(c.model.update(u) < u);
            }
        }
    }
}

TEST_CASE("Fibonacci bound holds along random heat-bath traces") {
    oracle::Gen gen(3);
    std::size_t violations = 0;
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
            if (!fibonacci_bound_check(state).pass) {
                violations++;
            }
        }
    }
    CHECK(violations == 0);
}

TEST_CASE("tape ops preserve the multiset of values") {
    oracle::Gen gen(4);
    for (int trial = 0; trial < 200; trial++) {
        std::size_t m = 3 + 2 * gen.index(3);
        std::vector<bool> v(3 * m);
        for (std::size_t i = 0; i < v.size(); i++) {
            v[i] = gen.index(2) == 1;
        }
        ChainLoop loop(m, gen.index(m), v);
        std::size_t ones = std::count(v.begin(), v.end(), true);
        PulseProgram prog;
        for (int k = 0; k < 30; k++) {
            if (gen.index(4) == 0) {
                std::vector<std::size_t> w = gen.permutation(3);
                prog.push_back(PrimitiveOp::head_gate(Gate::swap(w[0], w[1])));
            } else {
                prog.push_back(PrimitiveOp::parallel_swap(static_cast<SwapLayer>(gen.index(3))));
            }
        }
        ChainLoop after = loop;
        after.run(prog);
        std::vector<bool> w = after.values();
        CHECK(static_cast<std::size_t>(std::count(w.begin(), w.end(), true)) == ones);
        after.run(reversed(prog));
        CHECK(after == loop);
    }
}
