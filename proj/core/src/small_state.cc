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

#include "optorep/small_state.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <random>

#include "optorep/errors.h"

namespace optorep {

namespace {

using Amp = SmallState::Amplitude;
const double inv_sqrt2 = 1 / std::sqrt(2.0);

std::vector<Amp> eigenstate(PauliEigenstate e) {
    const Amp i(0, 1);
    switch (e) {
        case PauliEigenstate::zero:
            return {1, 0};
        case PauliEigenstate::one:
            return {0, 1};
        case PauliEigenstate::plus:
            return {inv_sqrt2, inv_sqrt2};
        case PauliEigenstate::minus:
            return {inv_sqrt2, -inv_sqrt2};
        case PauliEigenstate::plus_i:
            return {inv_sqrt2, i * inv_sqrt2};
        case PauliEigenstate::minus_i:
            return {inv_sqrt2, -i * inv_sqrt2};
    }
    return {1, 0};
}

}  // namespace

SmallState::SmallState(int qubits) : qubits_(qubits) {
    if (qubits < 1 || qubits > max_qubits) {
        throw ConfigError("qubits", "must be in [1, 12]");
    }
    amps_.assign(size_t{1} << qubits, Amp(0));
    amps_[0] = 1;
}

SmallState SmallState::product(const std::vector<PauliEigenstate> &factors) {
    SmallState st(static_cast<int>(factors.size()));
    for (size_t idx = 0; idx < st.amps_.size(); idx++) {
        Amp a = 1;
        for (size_t q = 0; q < factors.size(); q++) {
            a *= eigenstate(factors[q])[(idx >> q) & 1];
        }
        st.amps_[idx] = a;
    }
    return st;
}

SmallState SmallState::from_amplitudes(std::vector<Amp> amps) {
    int qubits = 0;
    while ((size_t{1} << qubits) < amps.size()) {
        qubits++;
    }
    if ((size_t{1} << qubits) != amps.size() || qubits < 1 || qubits > max_qubits) {
        throw ConfigError("amplitudes", "length must be 2^q with 1 <= q <= 12");
    }
    double n = 0;
    for (const auto &a : amps) {
        n += std::norm(a);
    }
    if (!(n > 0)) {
        throw ConfigError("amplitudes", "zero vector");
    }
    SmallState st(qubits);
    const double scale = 1 / std::sqrt(n);
    for (auto &a : amps) {
        a *= scale;
    }
    st.amps_ = std::move(amps);
    return st;
}

double SmallState::norm() const {
    double n = 0;
    for (const auto &a : amps_) {
        n += std::norm(a);
    }
    return std::sqrt(n);
}

void SmallState::check(int q) const {
    if (q < 0 || q >= qubits_) {
        throw ConfigError("qubit", "index " + std::to_string(q) + " out of range");
    }
}

void SmallState::h(int q) {
    check(q);
    const size_t bit = size_t{1} << q;
    for (size_t i = 0; i < amps_.size(); i++) {
        if (i & bit) {
            continue;
        }
        Amp a = amps_[i];
        Amp b = amps_[i | bit];
        amps_[i] = (a + b) * inv_sqrt2;
        amps_[i | bit] = (a - b) * inv_sqrt2;
    }
}

void SmallState::x(int q) {
    check(q);
    const size_t bit = size_t{1} << q;
    for (size_t i = 0; i < amps_.size(); i++) {
        if (!(i & bit)) {
            std::swap(amps_[i], amps_[i | bit]);
        }
    }
}

void SmallState::y(int q) {
    check(q);
    const size_t bit = size_t{1} << q;
    const Amp i_unit(0, 1);
    for (size_t i = 0; i < amps_.size(); i++) {
        if (i & bit) {
            continue;
        }
        Amp a = amps_[i];
        Amp b = amps_[i | bit];
        amps_[i] = -i_unit * b;
        amps_[i | bit] = i_unit * a;
    }
}

void SmallState::z(int q) {
    check(q);
    const size_t bit = size_t{1} << q;
    for (size_t i = 0; i < amps_.size(); i++) {
        if (i & bit) {
            amps_[i] = -amps_[i];
        }
    }
}

void SmallState::s(int q) {
    check(q);
    const size_t bit = size_t{1} << q;
    for (size_t i = 0; i < amps_.size(); i++) {
        if (i & bit) {
            amps_[i] *= Amp(0, 1);
        }
    }
}

void SmallState::s_dag(int q) {
    check(q);
    const size_t bit = size_t{1} << q;
    for (size_t i = 0; i < amps_.size(); i++) {
        if (i & bit) {
            amps_[i] *= Amp(0, -1);
        }
    }
}

void SmallState::cz(int a, int b) {
    check(a);
    check(b);
    if (a == b) {
        throw ConfigError("qubit", "CZ needs two distinct qubits");
    }
    const size_t mask = (size_t{1} << a) | (size_t{1} << b);
    for (size_t i = 0; i < amps_.size(); i++) {
        if ((i & mask) == mask) {
            amps_[i] = -amps_[i];
        }
    }
}

void SmallState::rotate_to_z(int q, PauliBasis basis) {
    switch (basis) {
        case PauliBasis::Z:
            break;
        case PauliBasis::X:
            h(q);
            break;
        case PauliBasis::Y:
            s_dag(q);
            h(q);
            break;
    }
}

double SmallState::outcome_probability(int q, PauliBasis basis, int outcome) const {
    check(q);
    SmallState r = *this;
    r.rotate_to_z(q, basis);
    const size_t bit = size_t{1} << q;
    double p = 0;
    for (size_t i = 0; i < r.amps_.size(); i++) {
        if (((i & bit) != 0) == (outcome != 0)) {
            p += std::norm(r.amps_[i]);
        }
    }
    return p;
}

SmallState SmallState::measured(int q, PauliBasis basis, int outcome) const {
    check(q);
    if (qubits_ == 1) {
        throw ConfigError("qubits", "measuring the last qubit leaves no state");
    }
    SmallState r = *this;
    r.rotate_to_z(q, basis);
    const size_t bit = size_t{1} << q;
    const size_t low_mask = bit - 1;
    std::vector<Amp> rest(r.amps_.size() / 2);
    for (size_t i = 0; i < r.amps_.size(); i++) {
        if (((i & bit) != 0) != (outcome != 0)) {
            continue;
        }
        size_t j = (i & low_mask) | ((i >> 1) & ~low_mask);
        rest[j] = r.amps_[i];
    }
    double n = 0;
    for (const auto &a : rest) {
        n += std::norm(a);
    }
    if (n < 1e-24) {
        throw InfeasibleError("zero-probability", "outcome has zero probability");
    }
    return from_amplitudes(std::move(rest));
}

bool equal_up_to_phase(const SmallState &a, const SmallState &b, double tol) {
    if (a.qubits() != b.qubits()) {
        return false;
    }
    const auto &va = a.amplitudes();
    const auto &vb = b.amplitudes();
    // Phase from the largest amplitude of b.
    size_t pivot = 0;
    for (size_t i = 1; i < vb.size(); i++) {
        if (std::abs(vb[i]) > std::abs(vb[pivot])) {
            pivot = i;
        }
    }
    if (std::abs(va[pivot]) < 1e-300) {
        return false;
    }
    const Amp phase = va[pivot] / vb[pivot] / std::abs(va[pivot] / vb[pivot]);
    for (size_t i = 0; i < va.size(); i++) {
        if (std::abs(va[i] - phase * vb[i]) > tol) {
            return false;
        }
    }
    return true;
}

bool ReorderingReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto &c) { return c.passed(); });
}

namespace {

// Probability of one outcome and the state left behind.
struct Branch {
    double probability;
    std::optional<SmallState> post;
};

using Procedure = std::function<Branch(const SmallState &, int outcome)>;

Branch measure_branch(const SmallState &st, int q, PauliBasis basis, int outcome) {
    Branch b{st.outcome_probability(q, basis, outcome), std::nullopt};
    if (b.probability > 1e-12 && st.qubits() > 1) {
        b.post = st.measured(q, basis, outcome);
    }
    return b;
}

void compare(IdentityCheck &check, const SmallState &input, const Procedure &left,
             const Procedure &right, double tol) {
    for (int outcome = 0; outcome < 2; outcome++) {
        Branch a = left(input, outcome);
        Branch b = right(input, outcome);
        check.cases++;
        double dev = std::abs(a.probability - b.probability);
        bool ok = dev <= tol;
        if (ok && a.post.has_value() != b.post.has_value()) {
            ok = false;
        }
        if (ok && a.post) {
            ok = equal_up_to_phase(*a.post, *b.post, tol);
        }
        check.max_deviation = std::max(check.max_deviation, dev);
        if (!ok) {
            check.failures++;
        }
    }
}

std::vector<SmallState> test_inputs(uint64_t seed, int random_states) {
    std::vector<SmallState> out;
    const PauliEigenstate all[] = {PauliEigenstate::zero,   PauliEigenstate::one,
                                   PauliEigenstate::plus,   PauliEigenstate::minus,
                                   PauliEigenstate::plus_i, PauliEigenstate::minus_i};
    for (auto a : all) {
        out.push_back(SmallState::product({a}));
        for (auto b : all) {
            out.push_back(SmallState::product({a, b}));
            for (auto c : all) {
                out.push_back(SmallState::product({a, b, c}));
            }
        }
    }
    // Graph-state style entanglement on three qubits.
    for (auto a : all) {
        for (auto c : all) {
            auto st = SmallState::product({a, PauliEigenstate::plus, c});
            st.cz(0, 1);
            st.cz(1, 2);
            out.push_back(st);
        }
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    for (int i = 0; i < random_states; i++) {
        std::vector<SmallState::Amplitude> amps(4);
        for (auto &a : amps) {
            a = {normal(rng), normal(rng)};
        }
        out.push_back(SmallState::from_amplitudes(std::move(amps)));
    }
    return out;
}

}  // namespace

ReorderingReport verify_reordering_identities(uint64_t seed, int random_states, double tol) {
    ReorderingReport report;
    IdentityCheck cond_x{"conditional Z then X = X with flipped outcome"};
    IdentityCheck cond_y{"conditional Z then Y = Y with flipped outcome"};
    IdentityCheck z_before_z{"Z before Z measurement removed"};
    IdentityCheck h_x{"H then X = Z"};
    IdentityCheck h_z{"H then Z = X"};
    IdentityCheck h_y{"H then Y = Y with flipped outcome"};

    for (const auto &input : test_inputs(seed, random_states)) {
        for (int q = 0; q < input.qubits(); q++) {
            auto plain = [q](PauliBasis basis, int flip) {
                return Procedure([=](const SmallState &st, int outcome) {
                    return measure_branch(st, q, basis, outcome ^ flip);
                });
            };
            auto after = [q](std::function<void(SmallState &)> gate, PauliBasis basis) {
                return Procedure([=](const SmallState &st, int outcome) {
                    SmallState t = st;
                    gate(t);
                    return measure_branch(t, q, basis, outcome);
                });
            };
            auto zq = [q](SmallState &st) { st.z(q); };
            auto hq = [q](SmallState &st) { st.h(q); };
            // The classical condition bit is 1 here; condition 0 is the identity on both sides.
            compare(cond_x, input, after(zq, PauliBasis::X), plain(PauliBasis::X, 1), tol);
            compare(cond_y, input, after(zq, PauliBasis::Y), plain(PauliBasis::Y, 1), tol);
            compare(z_before_z, input, after(zq, PauliBasis::Z), plain(PauliBasis::Z, 0), tol);
            compare(h_x, input, after(hq, PauliBasis::X), plain(PauliBasis::Z, 0), tol);
            compare(h_z, input, after(hq, PauliBasis::Z), plain(PauliBasis::X, 0), tol);
            compare(h_y, input, after(hq, PauliBasis::Y), plain(PauliBasis::Y, 1), tol);
        }
    }
    report.checks = {cond_x, cond_y, z_before_z, h_x, h_z, h_y};
    return report;
}

}  // namespace optorep
