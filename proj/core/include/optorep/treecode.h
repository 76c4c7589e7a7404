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

#ifndef OPTOREP_TREECODE_H
#define OPTOREP_TREECODE_H

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace optorep {

/// Shape of a regular loss-protection tree: the root has branches[0] children, each of those has
/// branches[1] children, and so on. Depth index d = branches.size() - 1.
class BranchingVector {
   public:
    explicit BranchingVector(std::vector<int> branches);

    /// Parses "7,3" style lists.
    static BranchingVector parse(std::string_view text);

    const std::vector<int> &branches() const noexcept {
        return branches_;
    }
    int operator[](size_t i) const {
        return branches_[i];
    }
    size_t size() const noexcept {
        return branches_.size();
    }
    int depth_index() const noexcept {
        return static_cast<int>(branches_.size()) - 1;
    }
    std::string str() const;

    bool operator==(const BranchingVector &) const = default;

   private:
    std::vector<int> branches_;
};

/// Loss rates seen by photons that travel to the minor node and photons that wait at the node.
struct LossRates {
    double eps_trav = 0;
    double eps_stat = 0;
};

/// Root plus all descendants: 1 + b0 + b0*b1 + ... + b0*...*bd.
int64_t tree_size(const BranchingVector &b);

/// Probability of an indirect Z measurement on a level-i tree qubit when each photon is lost with
/// probability eps. Throws std::out_of_range unless 0 <= i <= d.
double xi(int i, const BranchingVector &b, double eps);

/// All xi_0..xi_d in one upward pass.
std::vector<double> xi_all(const BranchingVector &b, double eps);

/// Allocation-free variant: writes xi_0..xi_d into out[0..d]; out needs d + 3 slots.
void xi_fill(const BranchingVector &b, double eps, std::span<double> out);

/// Logical X on a tree-protected qubit: xi_0.
double p_x_general(const BranchingVector &b, double eps);

/// Logical Z on a tree-protected qubit: (1 - eps + eps*xi_1)^b0.
double p_z_general(const BranchingVector &b, double eps);

/// Depth-2 closed forms in terms of the per-link survival eta^{1/n} * B.
double p_x_depth2(int b0, int b1, double eta_link, double b_coeff);
double p_z_depth2(int b0, int b1, double eta_link, double b_coeff);

}  // namespace optorep

#endif
