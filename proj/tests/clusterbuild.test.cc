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

#include "optorep/clusterbuild.h"

#include <cmath>
#include <numeric>
#include <vector>

#include "gtest/gtest.h"
#include "optorep/errors.h"
#include "oracles.h"

using namespace optorep;

namespace {

DerivedConstants default_constants() {
    return derive_constants(DeviceParams{});
}

CascadeProbabilities flat_probs(int k, double p_ghz, double survival, double level) {
    return CascadeProbabilities{p_ghz, survival, std::vector<double>(static_cast<size_t>(k), level)};
}

}  // namespace

TEST(clusterbuild, naive_single_unboosted_fusion) {
    DerivedConstants c;  // lossless defaults, p_ghz = 1/32
    c.p_ghz = 1;
    NaiveMultiplex mux{1, 1, 1};
    EXPECT_NEAR(naive_pc1(mux, 1, 1, c, NaiveFinalStage::cascade), 0.5, 1e-15);
    EXPECT_NEAR(naive_pc1(mux, 1, 1, c, NaiveFinalStage::spec_reading), 0.5, 1e-15);
    EXPECT_NEAR(naive_pc1(mux, 1, 1, c, NaiveFinalStage::printed), 0.5, 1e-15);
}

TEST(clusterbuild, naive_recursion_reference) {
    auto c = default_constants();
    NaiveMultiplex mux{3, 40, 2};
    // Independent evaluation of the recursion.
    double p = 1 - std::pow(1 - c.p_ghz, 40);
    for (int l = 1; l <= 8; l++) {
        const double q = std::pow(c.eta_ghz * std::pow(c.p_chip, l), 2) / 2;
        p = 1 - std::pow(1 - p * p * q, 3);
    }
    const double tail = std::pow(c.eta_ghz * std::pow(c.p_chip, 9), 17);
    EXPECT_NEAR(naive_pc1(mux, 8, 4, c), 1 - std::pow(1 - p * tail, 2), 1e-14);
    EXPECT_DOUBLE_EQ(mux.source_count(8), 6.0 * 40 * 2 * std::pow(6, 8));
}

TEST(clusterbuild, naive_monotone_in_final_copies) {
    auto c = default_constants();
    double last = 0;
    for (int64_t copies = 1; copies <= 64; copies *= 2) {
        const double p = naive_pc1(NaiveMultiplex{4, 60, copies}, 8, 8, c);
        EXPECT_GE(p, last);
        last = p;
    }
    EXPECT_THROW(naive_pc1(NaiveMultiplex{0, 1, 1}, 8, 8, c), ConfigError);
}

TEST(clusterbuild, naive_inner_search_respects_budget) {
    auto c = default_constants();
    auto best = best_naive_multiplex(1.9e11, 8, 8, c);
    EXPECT_LE(best.mux.source_count(8), 1.9e11 * (1 + 1e-12));
    EXPECT_NEAR(best.p_c1, naive_pc1(best.mux, 8, 8, c), 1e-15);
    // A neighbouring allocation within budget cannot do better.
    for (int64_t g : {best.mux.n_ghz - 1, best.mux.n_ghz + 1}) {
        if (g < 1) {
            continue;
        }
        NaiveMultiplex alt = best.mux;
        alt.n_ghz = g;
        if (alt.source_count(8) <= 1.9e11) {
            EXPECT_LE(naive_pc1(alt, 8, 8, c), best.p_c1);
        }
    }
}

TEST(clusterbuild, schedule_shape) {
    auto c = default_constants();
    auto s = build_schedule(7, 4, c);
    EXPECT_EQ(s.leaf_banks(), 128);
    EXPECT_EQ(s.measured_leaves(), 17);
    for (size_t i = 0; i < s.measured.size(); i++) {
        const double expect = s.measured[i] ? 1 / (c.p_chip * c.eta_ghz) : 1.0;
        EXPECT_DOUBLE_EQ(s.weights[i], expect);
    }
    ASSERT_EQ(s.probs.level_success.size(), 7u);
    for (int l = 1; l <= 7; l++) {
        const double mu = c.eta_ghz * std::pow(c.p_chip, l + 1);
        EXPECT_NEAR(s.probs.level_success[static_cast<size_t>(l - 1)],
                    mu * mu * c.boosted_pair_factor, 1e-15);
    }
    try {
        build_schedule(4, 4, c);
        FAIL();
    } catch (const InfeasibleError &e) {
        EXPECT_EQ(e.kind(), "design-infeasible");
    }
    // Two measured leaves out of four carry the larger share.
    std::vector<int> two{0, 2};
    auto small = schedule_with_measured(2, two, flat_probs(2, 0.5, 0.8, 0.5));
    EXPECT_EQ(small.measured_leaves(), 2);
    EXPECT_DOUBLE_EQ(small.weights[0] / small.weights[1], 1 / 0.8);
}

TEST(clusterbuild, apportion_largest_remainder) {
    std::vector<double> w{1, 1, 1};
    EXPECT_EQ(apportion(5, w), (std::vector<int64_t>{2, 2, 1}));
    std::vector<double> u{2, 1, 1};
    EXPECT_EQ(apportion(9, u), (std::vector<int64_t>{5, 2, 2}));
    for (int64_t total : {0, 1, 17, 1000}) {
        std::vector<double> v{1.25, 1, 1, 1.25, 1};
        auto a = apportion(total, v);
        EXPECT_EQ(std::accumulate(a.begin(), a.end(), int64_t{0}), total);
    }
    std::vector<double> none{0, 0};
    EXPECT_THROW(apportion(3, none), ConfigError);
}

TEST(clusterbuild, degenerate_single_fusion) {
    std::vector<int> none;
    auto s = schedule_with_measured(1, none, flat_probs(1, 1.0, 1.0, 0.5));
    EXPECT_NEAR(improved_pc1_exact(12, s).p_c1, 0.5, 1e-15);
    auto mc = improved_pc1_mc(12, s, 40'000, 5);
    EXPECT_NEAR(mc.estimate, 0.5, 4 * mc.std_error);
}

TEST(clusterbuild, too_few_sources_never_succeed) {
    auto s = build_schedule(7, 4, default_constants());
    EXPECT_EQ(improved_pc1_exact(5, s).p_c1, 0);
    EXPECT_EQ(improved_pc1_mc(5, s, 100, 1).estimate, 0);
}

TEST(clusterbuild, deterministic_cascade) {
    for (int k : {1, 3, 6}) {
        std::vector<int> measured{0};
        auto s = schedule_with_measured(k, measured, flat_probs(k, 1.0, 1.0, 1.0));
        const double n = 6.0 * std::pow(2, k);
        EXPECT_NEAR(improved_pc1_exact(n, s).p_c1, 1, 1e-15);
        EXPECT_EQ(improved_pc1_mc(n, s, 50, 3).estimate, 1);
        EXPECT_NEAR(improved_pc1_exact(n - 6, s).p_c1, 0, 1e-15);
    }
}

TEST(clusterbuild, exact_matches_enumeration) {
    // Heralding certain, so the bank counts are fixed by apportionment.
    std::vector<int> measured{0, 3};
    CascadeProbabilities probs{1.0, 0.8, {0.6, 0.45}};
    auto s = schedule_with_measured(2, measured, probs);
    for (int64_t x : {4, 5, 7, 9}) {
        auto counts = apportion(x, s.weights);
        const double expect =
            oracle::cascade_enumerated(counts, s.measured, 0.8, probs.level_success);
        EXPECT_NEAR(improved_pc1_exact(6.0 * x, s).p_c1, expect, 1e-13) << x;
    }
    std::vector<int> one{5};
    CascadeProbabilities p3{1.0, 0.7, {0.9, 0.5, 0.7}};
    auto s3 = schedule_with_measured(3, one, p3);
    auto counts = apportion(11, s3.weights);
    EXPECT_NEAR(improved_pc1_exact(66, s3).p_c1,
                oracle::cascade_enumerated(counts, s3.measured, 0.7, p3.level_success), 1e-13);
}

TEST(clusterbuild, exact_matches_monte_carlo) {
    auto s = build_schedule(7, 4, default_constants());
    for (double n : {1e6, 3.3e6}) {
        const double exact = improved_pc1_exact(n, s).p_c1;
        auto mc = improved_pc1_mc(n, s, 20'000, 99);
        EXPECT_NEAR(mc.estimate, exact, 3 * mc.std_error + 1e-12) << n;
    }
}

TEST(clusterbuild, success_non_decreasing_in_sources) {
    auto s = build_schedule(7, 4, default_constants());
    double last = 0;
    for (double n = 5e5; n <= 4e6; n *= 1.25) {
        const double p = improved_pc1_exact(n, s).p_c1;
        EXPECT_GE(p, last - 1e-12) << n;
        last = p;
    }
}

TEST(clusterbuild, sibling_preserving_relabelling) {
    auto c = default_constants();
    auto s = build_schedule(7, 4, c);
    std::vector<int> pair_swap;
    std::vector<int> half_swap;
    for (int i = 0; i < 128; i++) {
        if (s.measured[static_cast<size_t>(i)]) {
            pair_swap.push_back(i ^ 1);
            half_swap.push_back(i ^ 64);
        }
    }
    for (double n : {1e6, 3.3e6}) {
        const double ref = improved_pc1_exact(n, s).p_c1;
        EXPECT_NEAR(improved_pc1_exact(n, schedule_with_measured(7, pair_swap, s.probs)).p_c1,
                    ref, 1e-9);
        // Remainder ties go to the lower index, so swapping whole subtrees moves a few single
        // GHZ states between banks. The effect is small but not zero.
        EXPECT_NEAR(improved_pc1_exact(n, schedule_with_measured(7, half_swap, s.probs)).p_c1,
                    ref, 1e-4);
    }
}

TEST(clusterbuild, monte_carlo_reproducible_across_threads) {
    auto s = build_schedule(7, 4, default_constants());
    auto one = improved_pc1_mc(2e6, s, 4000, 17, SourceKind::single_photon, 1);
    auto four = improved_pc1_mc(2e6, s, 4000, 17, SourceKind::single_photon, 4);
    EXPECT_EQ(one.successes, four.successes);
    EXPECT_EQ(one.seed, 17u);
    auto other = improved_pc1_mc(2e6, s, 4000, 18, SourceKind::single_photon, 4);
    EXPECT_EQ(other.trials, 4000);
    EXPECT_THROW(improved_pc1_mc(2e6, s, 0, 1), ConfigError);
}

TEST(clusterbuild, exact_cap_guard) {
    auto s = build_schedule(7, 4, default_constants());
    ExactOptions tiny;
    tiny.cap = 10;
    try {
        improved_pc1_exact(3e6, s, SourceKind::single_photon, tiny);
        FAIL();
    } catch (const InfeasibleError &e) {
        EXPECT_EQ(e.kind(), "cap-too-small");
    }
}

TEST(clusterbuild, chain_success) {
    EXPECT_DOUBLE_EQ(pcn(1, 250), 1);
    EXPECT_DOUBLE_EQ(pcn(0.9, 1), 0.9);
    EXPECT_NEAR(pcn(std::pow(0.9, 1.0 / 250), 250), 0.9, 1e-13);
    EXPECT_THROW(pcn(1.1, 2), ConfigError);
    EXPECT_THROW(pcn(0.5, 0), ConfigError);
}

TEST(clusterbuild, min_sources_improved_small) {
    auto c = default_constants();
    auto r = min_sources(ResourceScheme::improved, 7, 4, 250, 0.9, c);
    EXPECT_EQ(r.method, PcMethod::exact);
    EXPECT_GE(r.p_cn, 0.9);
    EXPECT_NEAR(r.n_sources, 3.3e6, 3.3e6);  // within a factor of two
    EXPECT_LT(r.n_sources, 6.6e6);
    EXPECT_GT(r.n_sources, 1.65e6);
    // One resolution step below fails the target.
    auto s = build_schedule(7, 4, c);
    EXPECT_LT(pcn(improved_pc1_exact(r.n_sources / 1.02, s).p_c1, 250), 0.9);
}

TEST(clusterbuild, min_sources_monotone_in_target) {
    auto c = default_constants();
    MinSourcesOptions opts;
    opts.rel_resolution = 0.02;
    double last = 0;
    for (double target : {0.5, 0.9, 0.99}) {
        auto r = min_sources(ResourceScheme::ghz_primitive, 7, 4, 250, target, c, opts);
        EXPECT_GE(r.n_sources, last);
        last = r.n_sources;
    }
    EXPECT_THROW(min_sources(ResourceScheme::ghz_primitive, 7, 4, 250, 1.0, c), ConfigError);
}

TEST(clusterbuild, min_sources_unreachable) {
    auto c = default_constants();
    MinSourcesOptions opts;
    opts.ceiling = 1e3;
    try {
        min_sources(ResourceScheme::improved, 7, 4, 250, 0.9, c, opts);
        FAIL();
    } catch (const InfeasibleError &e) {
        EXPECT_EQ(e.kind(), "unreachable");
    }
}

TEST(clusterbuild, names_round_trip) {
    for (auto s : {ResourceScheme::naive, ResourceScheme::improved, ResourceScheme::ghz_primitive}) {
        EXPECT_EQ(parse_resource_scheme(resource_scheme_name(s)), s);
    }
    for (auto m : {PcMethod::automatic, PcMethod::mc, PcMethod::exact}) {
        EXPECT_EQ(parse_pc_method(pc_method_name(m)), m);
    }
    for (auto st :
         {NaiveFinalStage::cascade, NaiveFinalStage::spec_reading, NaiveFinalStage::printed}) {
        EXPECT_EQ(parse_naive_final_stage(naive_final_stage_name(st)), st);
    }
    EXPECT_THROW(parse_pc_method("guess"), ConfigError);
}
