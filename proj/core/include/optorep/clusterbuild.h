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

#ifndef OPTOREP_CLUSTERBUILD_H
#define OPTOREP_CLUSTERBUILD_H

#include <cstdint>
#include <span>
#include <vector>

#include "optorep/params.h"

namespace optorep {

// ---- naive multiplexed scheme ----

/// Parallel attempts at each stage of the naive scheme.
struct NaiveMultiplex {
    int64_t n_b = 1;     // per fusion step
    int64_t n_ghz = 1;   // per needed GHZ state
    int64_t n_meas = 1;  // copies of the final cluster

    /// 6 n_ghz n_meas (2 n_b)^k.
    double source_count(int k) const;
    void validate() const;
};

/// How the last fusion level and the copies of the final cluster combine.
enum class NaiveFinalStage {
    cascade,       // 1 - (1 - P_k P')^n_meas: all k levels multiplexed, n_meas copies
    spec_reading,  // 1 - (1 - P_{k-1}^2 Q_k P')^n_meas
    printed,       // 1 - (Q_k P')^n_meas, kept for auditing
};

const char *naive_final_stage_name(NaiveFinalStage s);
NaiveFinalStage parse_naive_final_stage(const char *name);

double naive_pc1(const NaiveMultiplex &mux, int k, int m, const DerivedConstants &consts,
                 NaiveFinalStage stage = NaiveFinalStage::cascade);

struct NaiveOptimum {
    NaiveMultiplex mux;
    double p_c1 = 0;
};

/// Best split of a source budget: n_ghz, n_meas in [1, inner_max], n_b the largest value the
/// budget allows. Ties go to the larger n_b. p_c1 = 0 when no split fits.
NaiveOptimum best_naive_multiplex(double n_sources, int k, int m, const DerivedConstants &consts,
                                  NaiveFinalStage stage = NaiveFinalStage::cascade,
                                  int inner_max = 200);

// ---- banked scheme ----

/// Per-stage success probabilities of the banked cascade.
struct CascadeProbabilities {
    double p_ghz = 0;                   // one GHZ factory attempt (6 photons) heralds
    double measured_survival = 1;       // pre-measured leaf photon survives
    std::vector<double> level_success;  // fusion success at level l = 1..k, index l-1
};

/// Device-derived values: p_l = mu_l^2 (boosted factor), mu_l = eta_GHZ P_chip^{l+1}.
CascadeProbabilities cascade_probabilities(const DerivedConstants &consts, int k);

/// Balanced binary fusion tree over 2^k leaf banks.
struct FusionSchedule {
    int k = 0;
    std::vector<uint8_t> measured;  // per leaf bank
    std::vector<double> weights;    // GHZ allocation weight per leaf bank
    CascadeProbabilities probs;

    int64_t leaf_banks() const {
        return static_cast<int64_t>(measured.size());
    }
    int measured_leaves() const;
};

/// 4m+1 measured leaves at positions floor(i 2^k / (4m+1)). Throws
/// InfeasibleError("design-infeasible") when 4m+1 > 2^k.
FusionSchedule build_schedule(int k, int m, const DerivedConstants &consts);

/// Schedule with explicit measured positions and probabilities. Measured banks get weight
/// 1 / measured_survival.
FusionSchedule schedule_with_measured(int k, std::span<const int> measured_positions,
                                      CascadeProbabilities probs);

/// Largest-remainder split of `total` proportional to `weights`; ties go to the lower index.
std::vector<int64_t> apportion(int64_t total, std::span<const double> weights);

/// What one source produces: single photons for the GHZ factories, or whole GHZ states.
enum class SourceKind { single_photon, ghz_primitive };

struct McEstimate {
    double estimate = 0;
    double std_error = 0;
    int64_t successes = 0;
    int64_t trials = 0;
    uint64_t seed = 0;
};

/// Monte Carlo estimate of Pr[root bank non-empty]. Trial t draws from a generator seeded by
/// (seed, t), so the result does not depend on `threads` (0 = hardware concurrency).
McEstimate improved_pc1_mc(double n_sources, const FusionSchedule &sched, int64_t trials,
                           uint64_t seed, SourceKind kind = SourceKind::single_photon,
                           int threads = 0);

struct ExactOptions {
    int64_t cap = 1 << 22;      // largest bank count the propagation will hold
    double prune = 1e-20;       // tail masses below this are dropped
    double window = 1e-17;      // GHZ-count masses below this are skipped
};

struct ExactResult {
    double p_c1 = 0;
    double truncated_mass = 0;  // upper bound on the probability dropped by pruning
};

/// Exact propagation of count distributions through the same cascade. Bank counts are fixed
/// given the total GHZ count x, so the result sums over x. Throws InfeasibleError("cap-too-small")
/// when a bank would need more than `cap` states.
ExactResult improved_pc1_exact(double n_sources, const FusionSchedule &sched,
                               SourceKind kind = SourceKind::single_photon,
                               const ExactOptions &opts = {});

/// P_c1^n.
double pcn(double p_c1, int n);

// ---- minimum source count ----

enum class ResourceScheme { naive, improved, ghz_primitive };
enum class PcMethod { automatic, mc, exact };

const char *resource_scheme_name(ResourceScheme s);
ResourceScheme parse_resource_scheme(const char *name);
const char *pc_method_name(PcMethod m);
PcMethod parse_pc_method(const char *name);

struct MinSourcesOptions {
    PcMethod method = PcMethod::automatic;  // exact when 2^k <= 256, else MC
    int64_t mc_trials = 100'000;
    uint64_t seed = 20260101;
    double rel_resolution = 0.01;
    double ceiling = 0;  // 0 picks 1e16 (naive) or 1e10 (banked)
    NaiveFinalStage naive_stage = NaiveFinalStage::cascade;
    int threads = 0;
};

struct MinSourcesResult {
    double n_sources = 0;
    double p_c1 = 0;
    double p_cn = 0;
    PcMethod method = PcMethod::exact;
    NaiveMultiplex mux;  // naive only
};

/// Single-node success probability at a source budget, by the method min_sources would use.
double node_success(ResourceScheme scheme, double n_sources, int k, int m,
                    const DerivedConstants &consts, const MinSourcesOptions &opts = {},
                    NaiveMultiplex *mux = nullptr);

/// Smallest budget (to rel_resolution) with P_c1^n >= target. Throws
/// InfeasibleError("unreachable") when the ceiling is not enough.
MinSourcesResult min_sources(ResourceScheme scheme, int k, int m, int n, double target_pcn,
                             const DerivedConstants &consts, const MinSourcesOptions &opts = {});

}  // namespace optorep

#endif
