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

#include "optorep/count_distribution.h"

#include <cmath>

#include "gtest/gtest.h"
#include "oracles.h"

using namespace optorep;

TEST(count_distribution, binomial_row_matches_product_formula) {
    for (int64_t n : {0, 1, 5, 17, 40}) {
        for (double p : {0.0, 0.03, 0.5, 0.97, 1.0}) {
            auto row = binomial_row(n, p);
            double sum = 0;
            for (int64_t j = 0; j <= n; j++) {
                const int64_t idx = j - row.first;
                const double got = idx >= 0 && idx < static_cast<int64_t>(row.masses.size())
                                       ? row.masses[static_cast<size_t>(idx)]
                                       : 0.0;
                EXPECT_NEAR(got, oracle::binomial_pmf(n, j, p), 1e-13) << n << " " << j << " " << p;
                sum += got;
            }
            EXPECT_NEAR(sum, 1, 1e-12);
        }
    }
}

TEST(count_distribution, large_row_is_normalized_and_centred) {
    auto row = binomial_row(3'000'000, 1.0 / 32);
    double sum = 0;
    double mean = 0;
    for (size_t i = 0; i < row.masses.size(); i++) {
        sum += row.masses[i];
        mean += row.masses[i] * static_cast<double>(row.first + static_cast<int64_t>(i));
    }
    EXPECT_NEAR(sum, 1, 1e-10);
    EXPECT_NEAR(mean, 3'000'000.0 / 32, 1e-3);
    EXPECT_LT(row.masses.size(), 40'000u);
}

TEST(count_distribution, point_and_binomial) {
    auto p = CountDistribution::point(7);
    EXPECT_EQ(p.min_value(), 7);
    EXPECT_EQ(p.max_value(), 7);
    EXPECT_DOUBLE_EQ(p.at(7), 1);
    EXPECT_DOUBLE_EQ(p.at(6), 0);
    EXPECT_DOUBLE_EQ(p.nonzero(), 1);
    EXPECT_DOUBLE_EQ(CountDistribution().nonzero(), 0);
    auto b = CountDistribution::binomial(20, 0.3);
    EXPECT_NEAR(b.total(), 1, 1e-14);
    EXPECT_NEAR(b.mean(), 6, 1e-12);
    EXPECT_NEAR(b.nonzero(), 1 - std::pow(0.7, 20), 1e-14);
}

TEST(count_distribution, thinning_composes) {
    // Bin(Bin(n, p), q) = Bin(n, pq).
    auto d = CountDistribution::binomial(30, 0.6).thinned(0.5);
    auto direct = CountDistribution::binomial(30, 0.3);
    for (int64_t v = 0; v <= 30; v++) {
        EXPECT_NEAR(d.at(v), direct.at(v), 1e-14) << v;
    }
    BinomialRowCache cache(0.5);
    auto cached = CountDistribution::binomial(30, 0.6).thinned(cache);
    for (int64_t v = 0; v <= 30; v++) {
        EXPECT_DOUBLE_EQ(cached.at(v), d.at(v));
    }
}

TEST(count_distribution, minimum_of_independent_counts) {
    auto a = CountDistribution::binomial(6, 0.4);
    auto b = CountDistribution::binomial(9, 0.7);
    auto m = min_of(a, b);
    for (int64_t v = 0; v <= 6; v++) {
        double expect = 0;
        for (int64_t i = 0; i <= 6; i++) {
            for (int64_t j = 0; j <= 9; j++) {
                if (std::min(i, j) == v) {
                    expect += a.at(i) * b.at(j);
                }
            }
        }
        EXPECT_NEAR(m.at(v), expect, 1e-14) << v;
    }
    EXPECT_NEAR(m.total(), 1, 1e-13);
    EXPECT_DOUBLE_EQ(min_of(CountDistribution::point(3), CountDistribution::point(5)).at(3), 1);
}

TEST(count_distribution, prune_reports_dropped_mass) {
    auto d = CountDistribution::binomial(200, 0.5);
    const double before = d.total();
    const double dropped = d.prune(1e-12);
    EXPECT_GT(dropped, 0);
    EXPECT_LT(dropped, 1e-9);
    EXPECT_NEAR(d.total() + dropped, before, 1e-15);
    EXPECT_LT(d.max_value() - d.min_value(), 200);
    for (double x : d.masses()) {
        EXPECT_GE(x, 0);
    }
}
