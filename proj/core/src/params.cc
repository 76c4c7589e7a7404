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
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "optorep/errors.h"

namespace optorep {

namespace {

void require_positive(const char *name, double v) {
    if (!(v > 0) || !std::isfinite(v)) {
        std::ostringstream ss;
        ss << "must be strictly positive and finite, got " << v;
        throw ConfigError(name, ss.str());
    }
}

void require_efficiency(const char *name, double v) {
    if (!(v > 0 && v <= 1)) {
        std::ostringstream ss;
        ss << "must lie in (0, 1], got " << v;
        throw ConfigError(name, ss.str());
    }
}

}  // namespace

void DeviceParams::validate() const {
    require_positive("alpha", alpha);
    require_positive("beta", beta);
    require_positive("tau_f", tau_f);
    require_positive("tau_s", tau_s);
    require_efficiency("eta_c", eta_c);
    require_efficiency("eta_sd", eta_sd);
    require_positive("c_f", c_f);
    require_positive("c_ch", c_ch);
}

DeviceParams DeviceParams::ideal() {
    DeviceParams p;
    p.alpha = 0;
    p.beta = 0;
    p.eta_c = 1;
    p.eta_sd = 1;
    return p;
}

DerivedConstants derive_constants_unchecked(const DeviceParams &p) {
    DerivedConstants d;
    // beta is per meter and tau_s * c_ch is in meters.
    d.p_chip = std::exp(-p.beta * p.tau_s * p.c_ch);
    // alpha is per km; tau_f * c_f is in meters.
    d.p_fib = std::exp(-p.alpha * (p.tau_f * p.c_f / 1000.0));
    const double x = p.eta_sd;
    d.eta_ghz = x / (2 - x);
    const double h = x * (2 - x);
    d.p_ghz = h * h * h / 32;
    d.boosted_pair_factor = 0.5 * x * x + 0.25 * x * x * x * x;
    d.plain_pair_factor = 0.5 * x * x;
    d.eta_c = p.eta_c;
    d.alpha = p.alpha;
    return d;
}

DerivedConstants derive_constants(const DeviceParams &p) {
    p.validate();
    return derive_constants_unchecked(p);
}

ChainCoefficients chain_coefficients(const DerivedConstants &d, int m, int k) {
    if (m < 1) {
        throw ConfigError("m", "channel count must be >= 1");
    }
    if (k < 1) {
        throw ConfigError("k", "fusion-step count must be >= 1");
    }
    ChainCoefficients c;
    c.a_coeff = m * d.boosted_pair_factor / (d.p_fib * d.p_fib);
    c.c_coeff = std::pow(d.p_chip, k + 2) * d.eta_ghz * d.eta_c;
    c.b_coeff = c.c_coeff * d.p_fib;
    return c;
}

DeviceParams device_params_from_json(std::string_view json_text, std::ostream *diag) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ConfigError("config", std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("config", "device configuration must be a JSON object");
    }

    DeviceParams p;
    struct Field {
        const char *name;
        double DeviceParams::*member;
    };
    static constexpr Field fields[] = {
        {"alpha", &DeviceParams::alpha},   {"beta", &DeviceParams::beta},
        {"tau_f", &DeviceParams::tau_f},   {"tau_s", &DeviceParams::tau_s},
        {"eta_c", &DeviceParams::eta_c},   {"eta_sd", &DeviceParams::eta_sd},
        {"c_f", &DeviceParams::c_f},       {"c_ch", &DeviceParams::c_ch},
    };

    for (const auto &[key, value] : doc.items()) {
        bool known = false;
        for (const auto &f : fields) {
            if (key == f.name) {
                known = true;
                if (!value.is_number()) {
                    throw ConfigError(key, "expected a number");
                }
                p.*(f.member) = value.get<double>();
            }
        }
        if (!known) {
            throw ConfigError(key, "unknown device parameter");
        }
    }
    for (const auto &f : fields) {
        if (!doc.contains(f.name) && diag != nullptr) {
            *diag << "default applied: " << f.name << " = " << p.*(f.member) << "\n";
        }
    }
    p.validate();
    return p;
}

std::string device_params_to_json(const DeviceParams &p) {
    nlohmann::json j = {
        {"alpha", p.alpha}, {"beta", p.beta}, {"tau_f", p.tau_f}, {"tau_s", p.tau_s},
        {"eta_c", p.eta_c}, {"eta_sd", p.eta_sd}, {"c_f", p.c_f},   {"c_ch", p.c_ch},
    };
    return j.dump();
}

}  // namespace optorep
