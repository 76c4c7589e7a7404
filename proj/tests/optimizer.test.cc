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
#include <vector>

#include "gtest/gtest.h"
#include "optorep/errors.h"

using namespace optorep;

namespace {

DerivedConstants default_constants() {
    return derive_constants(DeviceParams{});
}

std::vector<double> grid(double lo, double hi, double step) {
    std::vector<double> g;
    for (double L = lo; L <= hi + 1e-9; L += step) {
        g.push_back(L);
    }
    return g;
}

}  // namespace

TEST(optimizer, candidates_respect_fusion_budget) {
    SearchBounds bounds;
    for (int k : {7, 8, 10}) {
        auto designs = designs_for_k(k, bounds);
        ASSERT_FALSE(designs.empty());
        for (const auto &[m, tree] : designs) {
            EXPECT_EQ(k_of_design(m, tree), k);
            EXPECT_EQ(tree.size(), 2u);
            EXPECT_LE(m, bounds.m_max);
        }
    }
    auto k7 = designs_for_k(7, bounds);
    EXPECT_NE(std::find(k7.begin(), k7.end(), std::make_pair(4, BranchingVector({4, 2}))),
              k7.end());
    SearchBounds bad;
    bad.max_depth = 1;
    EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(optimizer, reference_optima_at_300_km) {
    auto c = default_constants();
    auto d7 = optimize_design(7, 300, Scheme::improved, c);
    EXPECT_EQ(d7.m, 4);
    EXPECT_EQ(d7.tree, BranchingVector({4, 2}));
    EXPECT_EQ(d7.parallel_channels, 8);
    auto d10 = optimize_design(10, 300, Scheme::improved, c);
    EXPECT_EQ(d10.m, 8);
    EXPECT_EQ(d10.tree, BranchingVector({10, 5}));
    auto naive = optimize_design(8, 300, Scheme::naive, c);
    EXPECT_EQ(naive.m, 8);
    EXPECT_EQ(naive.tree, BranchingVector({4, 2}));
    EXPECT_EQ(naive.parallel_channels, 208);
}

TEST(optimizer, reported_optimum_survives_rescan) {
    auto c = default_constants();
    auto ranked = rank_designs(8, 300, Scheme::improved, c);
    auto best = optimize_design(8, 300, Scheme::improved, c);
    ASSERT_FALSE(ranked.empty());
    EXPECT_EQ(ranked.front().m, best.m);
    EXPECT_EQ(ranked.front().tree, best.tree);
    for (size_t i = 1; i < ranked.size(); i++) {
        EXPECT_GE(ranked[i - 1].rate, ranked[i].rate);
    }
    for (const auto &[m, tree] : designs_for_k(8, SearchBounds{})) {
        ChainModel model(c, m, tree);
        EXPECT_LE(envelope_at(model, 300).rate_bits_per_mode, best.rate) << m << " " << tree.str();
    }
    // The reported n maximizes the rate for the chosen design.
    ChainModel chosen(c, best.m, best.tree);
    EXPECT_GE(best.rate, chosen.rate(300, best.n + 1));
    EXPECT_GE(best.rate, chosen.rate(300, best.n - 1));
    EXPECT_EQ(best.n_cluster, cluster_photon_count(best.m, best.tree));
}

TEST(optimizer, empty_feasible_set) {
    try {
        optimize_design(3, 300, Scheme::improved, default_constants());
        FAIL();
    } catch (const InfeasibleError &e) {
        EXPECT_EQ(e.kind(), "empty-feasible-set");
    }
}

TEST(optimizer, minimum_fusion_budget_beating_direct) {
    auto c = default_constants();
    auto g = grid(10, 600, 10);
    std::vector<int> ks{6, 7, 8};
    auto fresh = rate_family(ks, g, Scheme::improved, c);
    ASSERT_TRUE(fresh.min_k_beating_direct.has_value());
    EXPECT_EQ(*fresh.min_k_beating_direct, 7);
    auto naive = rate_family(ks, g, Scheme::naive, c);
    ASSERT_TRUE(naive.min_k_beating_direct.has_value());
    EXPECT_EQ(*naive.min_k_beating_direct, 8);
    EXPECT_FALSE(naive.curves[1].crossover_km.has_value());
}

TEST(optimizer, fitted_exponent_tracks_analytic_bound) {
    auto c = default_constants();
    auto g = grid(200, 600, 20);
    std::vector<int> ks{7, 8, 9, 10};
    auto fam = rate_family(ks, g, Scheme::improved, c);
    double last = 1;
    for (const auto &curve : fam.curves) {
        const auto &at300 = curve.points[5];
        ASSERT_DOUBLE_EQ(at300.range_km, 300);
        const double analytic = optimal_lb(at300.m, at300.tree, c).s_exp;
        EXPECT_NEAR(curve.fitted_s, analytic, 0.03) << curve.k;
        EXPECT_LT(curve.fitted_s, last) << curve.k;
        last = curve.fitted_s;
    }
}

TEST(optimizer, exponent_fit_recovers_exact_exponential) {
    std::vector<RatePoint> pts;
    for (double L = 0; L <= 800; L += 25) {
        pts.push_back({L, 0.2 * std::exp(-0.4 * 0.046 * L), 1});
    }
    EXPECT_NEAR(fit_exponent(pts, 0.046), 0.4, 1e-12);
    FitWindow narrow{300, 310};
    EXPECT_TRUE(std::isnan(fit_exponent(pts, 0.046, narrow)));
}

TEST(optimizer, operating_point_reports_sources) {
    auto c = default_constants();
    auto op = operating_point(7, 300, Scheme::improved, c);
    ASSERT_TRUE(op.n_sources.has_value());
    EXPECT_GT(*op.n_sources, 1.65e6);
    EXPECT_LT(*op.n_sources, 6.6e6);
    EXPECT_EQ(op.parallel_channels, 2 * op.m);
}
