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

#ifndef OPTOREP_RATEMODEL_H
#define OPTOREP_RATEMODEL_H

#include <cstdint>

#include "optorep/params.h"
#include "optorep/treecode.h"

namespace optorep {

/// Which repeater protocol the per-clock probabilities describe.
///
/// `improved`: inner tree photons wait in a local fiber spool, boosted fusion at the minor nodes,
/// key rate divided by the 2m spatial channels.
/// `naive`: every cluster photon travels to the minor node (no spool wait), plain fusion, and the
/// key rate is divided by the N = 2m * tree_size links that carry them.
enum class Scheme { improved, naive };

const char *scheme_name(Scheme s);
Scheme parse_scheme(const char *name);

/// Photons in the star-plus-trees cluster: (4m + 1) + 2m * tree_size(b).
int64_t cluster_photon_count(int m, const BranchingVector &b);

/// Fusion steps needed for that cluster: ceil(log2(n_cluster - 2)).
int k_of_design(int m, const BranchingVector &b);

/// Parallel fiber links of the naive scheme, 2m * tree_size(b).
int64_t naive_link_count(int m, const BranchingVector &b);

/// One repeater-chain design point evaluated at one range.
struct ChainConfig {
    double total_range_km = 0;
    int node_count = 1;
    int channels = 1;
    BranchingVector tree{{1}};
    double p_cn = 0.9;
    Scheme scheme = Scheme::improved;

    int64_t n_cluster() const {
        return cluster_photon_count(channels, tree);
    }
    int k() const {
        return k_of_design(channels, tree);
    }
    /// Throws ConfigError on n < 1, m < 1, L < 0 or p_cn outside (0, 1].
    void validate() const;
};

struct RatePoint {
    double range_km = 0;
    double rate_bits_per_mode = 0;
    int n_opt = 0;
};

/// The factors of the end-to-end success probability for one clock cycle.
struct MeasurementProbabilities {
    double p_x = 0;
    double p_z = 0;
    double p_bell = 0;
    double p_end = 0;
    double log_p_meas = 0;
};

LossRates loss_rates(const ChainConfig &cfg, const DerivedConstants &consts,
                     const ChainCoefficients &coeffs);

/// Minor-node Bell measurement success. Throws InfeasibleError("invalid-configuration") if > 1.
double p_bell(const ChainConfig &cfg, const DerivedConstants &consts,
              const ChainCoefficients &coeffs);

/// At least one of the m terminal photons detected by Alice (or Bob).
double p_end(const ChainConfig &cfg, const DerivedConstants &consts,
             const ChainCoefficients &coeffs);

MeasurementProbabilities measurement_probabilities(const ChainConfig &cfg,
                                                   const DerivedConstants &consts,
                                                   const ChainCoefficients &coeffs);

/// P_Z^{2(m-1)n} P_X^{2n} [1-(1-P_B)^m]^{n-1} P_end^2, accumulated in log space.
double p_meas(const ChainConfig &cfg, const DerivedConstants &consts,
              const ChainCoefficients &coeffs);

/// P_cn * P_meas / divisor, with divisor 2m (improved) or N (naive).
RatePoint rate_n(const ChainConfig &cfg, const DerivedConstants &consts,
                 const ChainCoefficients &coeffs);

/// Repeaterless ceiling -log2(1 - exp(-alpha L)) in bits per mode.
double r_direct(double range_km, double alpha);

/// Precomputed (m, b, scheme) design for fast repeated evaluation over (L, n).
class ChainModel {
   public:
    ChainModel(const DerivedConstants &consts, int m, BranchingVector tree,
               Scheme scheme = Scheme::improved, double p_cn = 0.9);

    double log_rate(double range_km, int n) const;
    double rate(double range_km, int n) const;
    MeasurementProbabilities probabilities(double range_km, int n) const;
    ChainConfig config(double range_km, int n) const;

    int m() const noexcept {
        return m_;
    }
    int k() const noexcept {
        return k_;
    }
    const BranchingVector &tree() const noexcept {
        return tree_;
    }
    Scheme scheme() const noexcept {
        return scheme_;
    }
    double p_cn() const noexcept {
        return p_cn_;
    }
    const DerivedConstants &constants() const noexcept {
        return consts_;
    }
    const ChainCoefficients &coefficients() const noexcept {
        return coeffs_;
    }
    double rate_divisor() const noexcept {
        return divisor_;
    }

   private:
    DerivedConstants consts_;
    int m_;
    BranchingVector tree_;
    Scheme scheme_;
    double p_cn_;
    int k_;
    ChainCoefficients coeffs_;
    double divisor_;
};

}  // namespace optorep

#endif
