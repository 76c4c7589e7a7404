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

#ifndef OPTOREP_ENVELOPE_H
#define OPTOREP_ENVELOPE_H

#include <iosfwd>
#include <span>
#include <vector>

#include "optorep/params.h"
#include "optorep/ratemodel.h"

namespace optorep {

/// P_X, P_Z, P_B, P_end evaluated on the locus eta^{1/n} = (AB^2)^{-z}.
struct LocusProbabilities {
    double p_x = 0;
    double p_z = 0;
    double p_b = 0;
    double p_end = 0;
};

/// Rate-distance lower bound R_LB(eta) = D * eta^s for a depth-2 design at a fixed z.
struct EnvelopeParams {
    double z = 0;
    double q1 = 0;
    double q2 = 0;
    double q3 = 0;
    double d_coeff = 0;
    double s_exp = 0;
    double l0_km = 0;       // z * ln(AB^2) / alpha
    double l0_no_z_km = 0;  // ln(AB^2) / alpha, the z-free form, reported for comparison

    double rate_at_eta(double eta) const;
    double rate_at_range(double range_km, double alpha) const;
};

/// Throws InfeasibleError("locus-invalid") unless AB^2 > 1 and z > 0.
LocusProbabilities locus_probs(double z, int m, int b0, int b1, const ChainCoefficients &coeffs);

EnvelopeParams analytic_lb(int m, int b0, int b1, const DerivedConstants &consts,
                           const ChainCoefficients &coeffs, double p_cn, double z);

struct ZSearchOptions {
    double z_lo = 1e-3;
    double z_hi = 3.0;
    int grid_points = 400;  // geometric coarse scan before golden-section refinement
    double rel_tol = 1e-6;
};

/// argmin_z s(z). Throws InfeasibleError("no-interior-minimum") if the coarse scan's best point
/// sits on either end of the interval.
double optimize_z(int m, int b0, int b1, const DerivedConstants &consts,
                  const ChainCoefficients &coeffs, const ZSearchOptions &opts = {});

/// optimize_z followed by analytic_lb, for a depth-2 design.
EnvelopeParams optimal_lb(int m, const BranchingVector &b, const DerivedConstants &consts,
                          double p_cn = 0.9, const ZSearchOptions &opts = {});

/// z * ln(AB^2) / alpha, km.
double repeater_spacing(double z, const ChainCoefficients &coeffs, double alpha);

struct NumericEnvelopeOptions {
    int n_max = 1'000'000;
    int patience = 50;  // stop after this many consecutive decreases in n
};

struct NumericEnvelope {
    std::vector<RatePoint> points;
    int saturated = 0;  // grid points whose maximum sat at n_max
};

/// max_n R_n(L) at one range, with the maximizing n.
RatePoint envelope_at(const ChainModel &model, double range_km,
                      const NumericEnvelopeOptions &opts = {}, bool *saturated = nullptr);

/// Envelope over n on a strictly increasing L grid. When `diag` is non-null a warning is written
/// for every point whose maximum is attained at n_max.
NumericEnvelope numeric_envelope(const ChainModel &model, std::span<const double> grid_km,
                                 const NumericEnvelopeOptions &opts = {},
                                 std::ostream *diag = nullptr);

/// D * eta^s sampled on a grid; n_opt holds round(L / L0).
std::vector<RatePoint> lower_bound_points(const EnvelopeParams &lb,
                                          std::span<const double> grid_km, double alpha);

/// First range where the curve exceeds R_direct, linearly interpolated in log-rate difference
/// between the bracketing grid points. Throws InfeasibleError("no-crossover").
double crossover_distance(std::span<const RatePoint> curve, double alpha);

}  // namespace optorep

#endif
