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

#include "optorep/params.h"

#include <cmath>
#include <sstream>

#include "gtest/gtest.h"
#include "optorep/errors.h"

using namespace optorep;

// Reference values evaluated at 40 significant digits outside this code base.
constexpr double kPChip = 0.99905804391941916;
constexpr double kPFib = 0.99905422752498071;
constexpr double kEtaGhz = 0.9801980198019802;
constexpr double kPGhz = 0.03124062593746875;
constexpr double kBoosted = 0.7301990025;

TEST(params, default_profile_constants) {
    auto d = derive_constants(DeviceParams{});
    EXPECT_NEAR(d.p_chip, kPChip, 1e-15);
    EXPECT_NEAR(d.p_fib, kPFib, 1e-15);
    EXPECT_NEAR(d.eta_ghz, kEtaGhz, 1e-15);
    EXPECT_NEAR(d.p_ghz, kPGhz, 1e-16);
    EXPECT_NEAR(d.boosted_pair_factor, kBoosted, 1e-15);
    EXPECT_NEAR(d.plain_pair_factor, 0.49005, 1e-15);
}

TEST(params, rounded_constants_match_headline_values) {
    auto d = derive_constants(DeviceParams{});
    EXPECT_NEAR(d.p_chip, 0.999058, 5e-7);
    EXPECT_NEAR(d.p_fib, 0.999054, 5e-7);
    EXPECT_NEAR(d.eta_ghz, 0.980198, 5e-7);
    EXPECT_NEAR(d.p_ghz, 0.0312406, 5e-8);
}

TEST(params, ideal_limits) {
    auto d = derive_constants_unchecked(DeviceParams::ideal());
    EXPECT_DOUBLE_EQ(d.p_chip, 1);
    EXPECT_DOUBLE_EQ(d.p_fib, 1);
    EXPECT_DOUBLE_EQ(d.eta_ghz, 1);
    EXPECT_DOUBLE_EQ(d.p_ghz, 1.0 / 32);
    EXPECT_DOUBLE_EQ(d.boosted_pair_factor, 0.75);
    EXPECT_THROW(derive_constants(DeviceParams::ideal()), ConfigError);
}

TEST(params, chain_coefficients_reference) {
    auto d = derive_constants(DeviceParams{});
    auto c = chain_coefficients(d, 4, 8);
    EXPECT_NEAR(c.a_coeff, 2.9263286746679355, 1e-13);
    EXPECT_NEAR(c.b_coeff, 0.96038481818869995, 1e-14);
    EXPECT_NEAR(c.c_coeff, 0.96129398357877039, 1e-14);
    EXPECT_NEAR(c.b_coeff, c.c_coeff * d.p_fib, 1e-15);
    // A scales with m, B and C do not.
    auto c8 = chain_coefficients(d, 8, 8);
    EXPECT_NEAR(c8.a_coeff, 2 * c.a_coeff, 1e-13);
    EXPECT_DOUBLE_EQ(c8.b_coeff, c.b_coeff);
    EXPECT_THROW(chain_coefficients(d, 0, 8), ConfigError);
    EXPECT_THROW(chain_coefficients(d, 4, 0), ConfigError);
}

TEST(params, coefficients_decrease_with_fusion_depth) {
    auto d = derive_constants(DeviceParams{});
    for (int k = 1; k < 12; k++) {
        EXPECT_GT(chain_coefficients(d, 4, k).c_coeff, chain_coefficients(d, 4, k + 1).c_coeff);
    }
}

TEST(params, validate_names_offending_field) {
    DeviceParams p;
    p.eta_c = 1.5;
    try {
        p.validate();
        FAIL();
    } catch (const ConfigError &e) {
        EXPECT_EQ(e.key(), "eta_c");
    }
    p = DeviceParams{};
    p.alpha = -1;
    try {
        p.validate();
        FAIL();
    } catch (const ConfigError &e) {
        EXPECT_EQ(e.key(), "alpha");
    }
}

TEST(params, json_partial_with_defaults_reported) {
    std::ostringstream diag;
    auto p = device_params_from_json(R"({"alpha": 0.05, "eta_sd": 0.95})", &diag);
    EXPECT_DOUBLE_EQ(p.alpha, 0.05);
    EXPECT_DOUBLE_EQ(p.eta_sd, 0.95);
    EXPECT_DOUBLE_EQ(p.beta, DeviceParams{}.beta);
    EXPECT_NE(diag.str().find("default applied: beta"), std::string::npos);
    EXPECT_EQ(diag.str().find("default applied: alpha"), std::string::npos);
}

TEST(params, json_errors_name_the_key) {
    try {
        device_params_from_json(R"({"alpha": 0.05, "gamma": 1})");
        FAIL();
    } catch (const ConfigError &e) {
        EXPECT_EQ(e.key(), "gamma");
    }
    try {
        device_params_from_json(R"({"beta": "high"})");
        FAIL();
    } catch (const ConfigError &e) {
        EXPECT_EQ(e.key(), "beta");
    }
    EXPECT_THROW(device_params_from_json("[1, 2]"), ConfigError);
    EXPECT_THROW(device_params_from_json("{not json"), ConfigError);
    EXPECT_THROW(device_params_from_json(R"({"eta_c": 0})"), ConfigError);
}

TEST(params, json_round_trip) {
    DeviceParams p;
    p.tau_f = 2e-7;
    p.c_ch = 8e7;
    EXPECT_EQ(device_params_from_json(device_params_to_json(p)), p);
}
