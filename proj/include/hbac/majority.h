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

#ifndef HBAC_MAJORITY_H
#define HBAC_MAJORITY_H

#include "hbac/bias.h"
#include "hbac/circuit.h"

namespace hbac {

/// Register wires of the 3-bit compression circuits. The majority lands on A.
enum MajorityWire : std::size_t { WIRE_A = 0, WIRE_B = 1, WIRE_C = 2 };

/// CNOT(A->B) followed by a controlled-SWAP of A and C on B = 1, with the
/// controlled-SWAP spelled as CNOT / generalized Toffoli / CNOT. No noise
/// sites.
Circuit majority_circuit_cswap();

/// CNOT(A->B), CNOT(A->C), Toffoli(B,C->A), carrying the seven noise sites
/// that can affect A: e1..e3 on A,B,C after gate 0, e4..e6 on A,B,C after
/// gate 1, e7 on A after gate 2.
Circuit majority_circuit_cnot_toffoli();

/// CNOT from b1 onto b2 followed by a swap of b1 and c conditioned on the
/// CNOT target reading 0. Wires: 0 = b1, 1 = b2, 2 = c; the majority ends
/// up on wire 2.
Circuit cnot_cswap_circuit();

/// Final value of c after cnot_cswap_circuit, in closed form
/// b1 c + b2 c + b1 b2 (mod 2).
bool cnot_cswap_majority(bool b1, bool b2, bool c);

bool majority3(bool a, bool b, bool c);

/// Bias of the majority of n independent bits of bias b (n odd).
Bias optimal_permutation_bias(unsigned n, Bias b);

struct PermutationSearch {
    Bias best_bias;
    /// Number of candidates examined: basis-state permutations for n <= 3,
    /// weight-class count vectors for n = 5.
    std::uint64_t candidates;
};

/// Maximum first-bit bias over all permutations of the 2^n basis states of
/// n independent bits of bias b. For n <= 3 every permutation is
/// enumerated. For n = 5 the search runs over every way of choosing how many
/// states of each Hamming weight map onto first-bit-0 states, which covers
/// the same set of achievable biases.
PermutationSearch exhaustive_best_first_bit_bias(unsigned n, Bias b);

}  // namespace hbac

#endif
