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

#ifndef OPTOREP_SMALL_STATE_H
#define OPTOREP_SMALL_STATE_H

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "optorep/graphstate.h"

namespace optorep {

/// Single-qubit eigenstates of X, Y and Z.
enum class PauliEigenstate { zero, one, plus, minus, plus_i, minus_i };

/// Dense statevector over at most 12 qubits. Qubit q is bit q of the basis index.
class SmallState {
   public:
    static constexpr int max_qubits = 12;
    using Amplitude = std::complex<double>;

    /// |0...0>.
    explicit SmallState(int qubits);
    static SmallState product(const std::vector<PauliEigenstate> &factors);
    /// Normalizes; throws ConfigError on a zero or wrongly sized vector.
    static SmallState from_amplitudes(std::vector<Amplitude> amps);

    int qubits() const noexcept {
        return qubits_;
    }
    const std::vector<Amplitude> &amplitudes() const noexcept {
        return amps_;
    }
    double norm() const;

    void h(int q);
    void x(int q);
    void y(int q);
    void z(int q);
    void s(int q);
    void s_dag(int q);
    void cz(int a, int b);

    /// Probability of `outcome` (0 is the +1 eigenvalue) for a measurement of q in `basis`.
    double outcome_probability(int q, PauliBasis basis, int outcome) const;

    /// Normalized state of the other qubits after `outcome` on q; q is removed and higher qubits
    /// shift down. Throws InfeasibleError("zero-probability") for an impossible outcome.
    SmallState measured(int q, PauliBasis basis, int outcome) const;

   private:
    void check(int q) const;
    /// Rotates q so that a Z measurement reads out `basis`.
    void rotate_to_z(int q, PauliBasis basis);

    int qubits_;
    std::vector<Amplitude> amps_;
};

/// True when a = e^{i phi} b for some phi, to within tol per amplitude.
bool equal_up_to_phase(const SmallState &a, const SmallState &b, double tol = 1e-12);

struct IdentityCheck {
    std::string name;
    int cases = 0;
    int failures = 0;
    double max_deviation = 0;
    bool passed() const {
        return failures == 0;
    }
};

struct ReorderingReport {
    std::vector<IdentityCheck> checks;
    bool all_passed() const;
};

/// Checks the measurement reordering rules on product states of up to three qubits, CZ-entangled
/// three-qubit states and seeded random two-qubit states:
/// a classically conditioned Z followed by an X or Y measurement equals the measurement with the
/// outcome flipped; Z before a Z measurement changes nothing; H then X reads Z, H then Z reads X,
/// H then Y reads Y flipped.
ReorderingReport verify_reordering_identities(uint64_t seed = 7, int random_states = 100,
                                              double tol = 1e-12);

}  // namespace optorep

#endif
