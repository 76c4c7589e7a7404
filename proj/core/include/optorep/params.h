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

#ifndef OPTOREP_PARAMS_H
#define OPTOREP_PARAMS_H

#include <iosfwd>
#include <string>
#include <string_view>

namespace optorep {

/// Raw hardware parameters of a repeater node and the fiber plant.
///
/// Units: alpha per km, beta per m, times in s, speeds in m/s. Only the product of source and
/// detector efficiency ever enters the model, so only the product is stored.
struct DeviceParams {
    double alpha = 0.046;     // fiber loss, 1/km (0.2 dB/km)
    double beta = 0.62;       // on-chip loss, 1/m (2.7 dB/m)
    double tau_f = 102.85e-9; // feed-forward time in fiber, s
    double tau_s = 20e-12;    // feed-forward time on chip, s
    double eta_c = 0.99;      // chip-to-fiber coupling
    double eta_sd = 0.99;     // source x detector efficiency
    double c_f = 2e8;         // speed of light in fiber, m/s
    double c_ch = 7.6e7;      // speed of light on chip, m/s

    /// Throws ConfigError naming the first offending field.
    void validate() const;

    /// Lossless, unit-efficiency devices. Loss coefficients are zero, which `validate` rejects;
    /// this profile is only for closed-form limit checks through `derive_constants_unchecked`.
    static DeviceParams ideal();

    bool operator==(const DeviceParams &) const = default;
};

/// Survival and heralding probabilities that every other module consumes.
struct DerivedConstants {
    double p_chip = 1;               // on-chip survival for one feed-forward step
    double p_fib = 1;                // fiber survival during the final feed-forward
    double eta_ghz = 1;              // survival of heralded GHZ photons
    double p_ghz = 1.0 / 32;         // GHZ-factory heralding probability
    double boosted_pair_factor = 0.75;  // (1/2)x^2 + (1/4)x^4, x = eta_sd
    double plain_pair_factor = 0.5;     // (1/2)x^2, unboosted fusion
    double eta_c = 1;                // carried along for the B, C coefficients
    double alpha = 0;                // fiber loss per km, for transmissivities
};

/// A, B, C of the per-link success expressions. A carries an explicit factor of m.
struct ChainCoefficients {
    double a_coeff = 0;
    double b_coeff = 0;
    double c_coeff = 0;
};

DerivedConstants derive_constants(const DeviceParams &p);

/// Same closed forms without range checks; used for the ideal-device limits.
DerivedConstants derive_constants_unchecked(const DeviceParams &p);

/// m parallel qubit channels, k fusion steps.
ChainCoefficients chain_coefficients(const DerivedConstants &d, int m, int k);

/// Parses a JSON object holding any subset of the eight DeviceParams fields. Missing fields keep
/// the built-in defaults; each default applied is reported on `diag` when it is non-null.
/// Unknown keys and non-numeric values throw ConfigError naming the key.
DeviceParams device_params_from_json(std::string_view json_text, std::ostream *diag = nullptr);

/// Single-line JSON rendering with all eight fields.
std::string device_params_to_json(const DeviceParams &p);

}  // namespace optorep

#endif
