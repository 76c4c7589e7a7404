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

#include "optorep/optimizer.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "optorep/errors.h"

namespace optorep {

namespace {

void enumerate_trees(int depth, int entry_max, std::vector<int> &prefix,
                     std::vector<BranchingVector> &out) {
    if (static_cast<int>(prefix.size()) == depth) {
        out.emplace_back(prefix);
        return;
    }
    for (int e = 1; e <= entry_max; e++) {
        prefix.push_back(e);
        enumerate_trees(depth, entry_max, prefix, out);
        prefix.pop_back();
    }
}

bool better(const DesignPoint &a, const DesignPoint &b) {
    if (a.rate != b.rate) {
        return a.rate > b.rate;
    }
    if (a.n_cluster != b.n_cluster) {
        return a.n_cluster < b.n_cluster;
    }
    if (a.m != b.m) {
        return a.m < b.m;
    }
    return a.tree.branches() < b.tree.branches();
}

int64_t channels_for(Scheme scheme, int m, const BranchingVector &tree) {
    return scheme == Scheme::improved ? 2 * int64_t{m} : naive_link_count(m, tree);
}

DesignPoint evaluate(int k, double range_km, Scheme scheme, const DerivedConstants &consts,
                     int m, const BranchingVector &tree, double p_cn,
                     const NumericEnvelopeOptions &env) {
    ChainModel model(consts, m, tree, scheme, p_cn);
    RatePoint best = envelope_at(model, range_km, env);
    DesignPoint d;
    d.scheme = scheme;
    d.k = k;
    d.m = m;
    d.tree = tree;
    d.n = best.n_opt;
    d.range_km = range_km;
    d.rate = std::isfinite(best.rate_bits_per_mode) ? best.rate_bits_per_mode : 0.0;
    d.n_cluster = cluster_photon_count(m, tree);
    d.parallel_channels = channels_for(scheme, m, tree);
    return d;
}

}  // namespace

void SearchBounds::validate() const {
    if (m_max < 1) {
        throw ConfigError("m-max", "must be >= 1");
    }
    if (entry_max < 1) {
        throw ConfigError("entry-max", "must be >= 1");
    }
    if (min_depth < 1 || max_depth < min_depth || max_depth > 4) {
        throw ConfigError("depth", "need 1 <= min depth <= max depth <= 4");
    }
}

std::vector<std::pair<int, BranchingVector>> designs_for_k(int k, const SearchBounds &bounds) {
    bounds.validate();
    std::vector<BranchingVector> trees;
    for (int depth = bounds.min_depth; depth <= bounds.max_depth; depth++) {
        std::vector<int> prefix;
        enumerate_trees(depth, bounds.entry_max, prefix, trees);
    }
    std::vector<std::pair<int, BranchingVector>> out;
    for (int m = 1; m <= bounds.m_max; m++) {
        for (const auto &t : trees) {
            if (k_of_design(m, t) == k) {
                out.emplace_back(m, t);
            }
        }
    }
    return out;
}

std::vector<DesignPoint> rank_designs(int k, double range_km, Scheme scheme,
                                      const DerivedConstants &consts, const SearchBounds &bounds,
                                      double p_cn, const NumericEnvelopeOptions &env) {
    std::vector<DesignPoint> out;
    for (const auto &[m, tree] : designs_for_k(k, bounds)) {
        out.push_back(evaluate(k, range_km, scheme, consts, m, tree, p_cn, env));
    }
    std::sort(out.begin(), out.end(), better);
    return out;
}

DesignPoint optimize_design(int k, double range_km, Scheme scheme, const DerivedConstants &consts,
                            const SearchBounds &bounds, double p_cn,
                            const NumericEnvelopeOptions &env) {
    auto candidates = designs_for_k(k, bounds);
    if (candidates.empty()) {
        throw InfeasibleError("empty-feasible-set",
                              "no (m, b) in the search bounds needs exactly k = " +
                                  std::to_string(k) + " fusion steps");
    }
    std::optional<DesignPoint> best;
    for (const auto &[m, tree] : candidates) {
        auto d = evaluate(k, range_km, scheme, consts, m, tree, p_cn, env);
        if (!best || better(d, *best)) {
            best = std::move(d);
        }
    }
    return *best;
}

DesignPoint operating_point(int k, double range_km, Scheme scheme, const DerivedConstants &consts,
                            const SearchBounds &bounds, double p_cn,
                            const MinSourcesOptions &sources) {
    auto d = optimize_design(k, range_km, scheme, consts, bounds, p_cn);
    const ResourceScheme rs =
        scheme == Scheme::improved ? ResourceScheme::improved : ResourceScheme::naive;
    d.n_sources = min_sources(rs, k, d.m, d.n, p_cn, consts, sources).n_sources;
    return d;
}

double fit_exponent(std::span<const RatePoint> points, double alpha, const FitWindow &window) {
    double sx = 0;
    double sy = 0;
    double sxx = 0;
    double sxy = 0;
    int count = 0;
    for (const auto &p : points) {
        if (p.range_km < window.lo_km || p.range_km > window.hi_km || !(p.rate_bits_per_mode > 0)) {
            continue;
        }
        double x = alpha * p.range_km;
        double y = std::log(p.rate_bits_per_mode);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        count++;
    }
    if (count < 2) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    double denom = count * sxx - sx * sx;
    return -(count * sxy - sx * sy) / denom;
}

RateFamily rate_family(std::span<const int> ks, std::span<const double> grid_km, Scheme scheme,
                       const DerivedConstants &consts, const SearchBounds &bounds, double p_cn,
                       const FitWindow &window) {
    if (ks.empty() || grid_km.empty()) {
        throw ConfigError("grid", "need at least one k and one range");
    }
    RateFamily fam;
    for (int k : ks) {
        RateCurve curve;
        curve.k = k;
        auto candidates = designs_for_k(k, bounds);
        std::vector<ChainModel> models;
        models.reserve(candidates.size());
        for (const auto &[m, tree] : candidates) {
            models.emplace_back(consts, m, tree, scheme, p_cn);
        }
        std::vector<RatePoint> plain;
        for (double L : grid_km) {
            std::optional<DesignPoint> best;
            for (size_t i = 0; i < models.size(); i++) {
                RatePoint r = envelope_at(models[i], L);
                DesignPoint d;
                d.scheme = scheme;
                d.k = k;
                d.m = candidates[i].first;
                d.tree = candidates[i].second;
                d.n = r.n_opt;
                d.range_km = L;
                d.rate = std::isfinite(r.rate_bits_per_mode) ? r.rate_bits_per_mode : 0.0;
                d.n_cluster = cluster_photon_count(d.m, d.tree);
                d.parallel_channels = channels_for(scheme, d.m, d.tree);
                if (!best || better(d, *best)) {
                    best = std::move(d);
                }
            }
            if (best) {
                plain.push_back({L, best->rate, best->n});
                curve.points.push_back(std::move(*best));
            }
        }
        curve.fitted_s = fit_exponent(plain, consts.alpha, window);
        try {
            curve.crossover_km = crossover_distance(plain, consts.alpha);
        } catch (const InfeasibleError &) {
        }
        if (curve.crossover_km && (!fam.min_k_beating_direct || k < *fam.min_k_beating_direct)) {
            fam.min_k_beating_direct = k;
        }
        fam.curves.push_back(std::move(curve));
    }
    return fam;
}

}  // namespace optorep
