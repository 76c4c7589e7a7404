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

#ifndef OPTOREP_OPTIMIZER_H
#define OPTOREP_OPTIMIZER_H

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "optorep/clusterbuild.h"
#include "optorep/envelope.h"
#include "optorep/params.h"
#include "optorep/ratemodel.h"
#include "optorep/treecode.h"

namespace optorep {

/// Integer box searched for (m, b).
struct SearchBounds {
    int m_max = 16;
    int entry_max = 16;
    int min_depth = 2;
    int max_depth = 2;

    void validate() const;
};

struct DesignPoint {
    Scheme scheme = Scheme::improved;
    int k = 0;
    int m = 0;
    BranchingVector tree{{1}};
    int n = 0;  // maximizing node count at the requested range
    double range_km = 0;
    double rate = 0;
    int64_t n_cluster = 0;
    int64_t parallel_channels = 0;  // 2m (new) or 2m * tree_size (naive)
    std::optional<double> n_sources;
};

/// Every (m, b) in the box with k_of_design = k.
std::vector<std::pair<int, BranchingVector>> designs_for_k(int k, const SearchBounds &bounds);

/// All candidates evaluated at one range, best first. Ties go to the smaller cluster, then the
/// smaller m.
std::vector<DesignPoint> rank_designs(int k, double range_km, Scheme scheme,
                                      const DerivedConstants &consts,
                                      const SearchBounds &bounds = {}, double p_cn = 0.9,
                                      const NumericEnvelopeOptions &env = {});

/// Best of rank_designs. Throws InfeasibleError("empty-feasible-set").
DesignPoint optimize_design(int k, double range_km, Scheme scheme, const DerivedConstants &consts,
                            const SearchBounds &bounds = {}, double p_cn = 0.9,
                            const NumericEnvelopeOptions &env = {});

/// optimize_design plus the minimum source count for P_cn >= p_cn over the design's n nodes.
DesignPoint operating_point(int k, double range_km, Scheme scheme, const DerivedConstants &consts,
                            const SearchBounds &bounds = {}, double p_cn = 0.9,
                            const MinSourcesOptions &sources = {});

/// Per-k envelope R^(k)(L), maximized over designs at every range.
struct RateCurve {
    int k = 0;
    std::vector<DesignPoint> points;
    double fitted_s = 0;  // from ln R against alpha L, NaN if fewer than 2 points in the window
    std::optional<double> crossover_km;
};

struct RateFamily {
    std::vector<RateCurve> curves;
    std::optional<int> min_k_beating_direct;
};

struct FitWindow {
    double lo_km = 200;
    double hi_km = 600;
};

RateFamily rate_family(std::span<const int> ks, std::span<const double> grid_km, Scheme scheme,
                       const DerivedConstants &consts, const SearchBounds &bounds = {},
                       double p_cn = 0.9, const FitWindow &window = {});

/// Least-squares slope of ln R against alpha L over the window, negated.
double fit_exponent(std::span<const RatePoint> points, double alpha, const FitWindow &window = {});

}  // namespace optorep

#endif
