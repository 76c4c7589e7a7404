// Copyright 2026 The optorep Authors
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

#ifndef OPTOREP_TESTS_ORACLES_H
#define OPTOREP_TESTS_ORACLES_H

#include <cstdint>
#include <vector>

#include "optorep/graphstate.h"
#include "optorep/small_state.h"

namespace optorep::oracle {

// Explicit photon-loss sampling on a regular tree.
struct LossTreeEstimate {
    double p_x = 0;
    double p_z = 0;
    double se_x = 0;
    double se_z = 0;
};

LossTreeEstimate loss_tree_mc(const std::vector<int> &branches, double eps, int64_t samples,
                              uint64_t seed);

// Pr[root count >= 1] for a cascade with fixed leaf counts, by exhaustive enumeration of every
// binomial outcome. Only for tiny trees and counts.
double cascade_enumerated(const std::vector<int64_t> &leaf_counts,
                          const std::vector<uint8_t> &measured, double measured_survival,
                          const std::vector<double> &level_success);

// Binomial pmf from the product formula, for small n.
double binomial_pmf(int64_t n, int64_t j, double p);

// Graph state |G> on vertices 0..q-1 of g (g must use exactly those labels).
SmallState graph_state(const SimpleGraph &g, int qubits);

// Relabels g after deleting `removed`: labels above it shift down by one.
SimpleGraph drop_label(const SimpleGraph &g, int removed);

// Whether `state` equals |target> after some local Clifford. `any_clifford` qubits may take any
// of the 24 single-qubit Cliffords; the rest are restricted to diagonal ones (I, S, Z, S^dag).
bool equal_up_to_local_clifford(const SmallState &state, const SimpleGraph &target, int qubits,
                                const std::vector<int> &any_clifford);

}  // namespace optorep::oracle

#endif
