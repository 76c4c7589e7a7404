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

#include "optorep/envelope.h"

#include <cmath>
#include <limits>
#include <ostream>

#include "optorep/errors.h"

namespace optorep {

namespace {

// 1 - (1 - t)^n.
double at_least_one(double t, int n) {
    if (t >= 1) {
        return 1;
    }
    return -std::expm1(n * std::log1p(-t));
}

double locus_gain(const ChainCoefficients &c) {
    return c.a_coeff * c.b_coeff * c.b_coeff;
}

struct Exponent {
    double s;
    double log_q1;
    double q2;
    double q3;
};

Exponent exponent_at(double z, int m, int b0, int b1, const ChainCoefficients &coeffs) {
    auto lp = locus_probs(z, m, b0, b1, coeffs);
    Exponent e;
    e.log_q1 = 2.0 * (m - 1) * std::log(lp.p_z) + 2.0 * std::log(lp.p_x);
    e.q2 = at_least_one(lp.p_b, m);
    e.q3 = lp.p_end * lp.p_end;
    e.s = -(e.log_q1 + std::log(e.q2)) / (z * std::log(locus_gain(coeffs)));
    return e;
}

// Golden-section minimization of a unimodal f on [lo, hi].
template <typename F>
double golden_section_minimize(F &&f, double lo, double hi, double rel_tol) {
    const double inv_phi = (std::sqrt(5.0) - 1) / 2;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (std::abs(b - a) > rel_tol * (std::abs(c) + std::abs(d))) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return (a + b) / 2;
}

}  // namespace

double EnvelopeParams::rate_at_eta(double eta) const {
    return d_coeff * std::pow(eta, s_exp);
}

double EnvelopeParams::rate_at_range(double range_km, double alpha) const {
    return d_coeff * std::exp(-s_exp * alpha * range_km);
}

LocusProbabilities locus_probs(double z, int m, int b0, int b1, const ChainCoefficients &coeffs) {
    const double g = locus_gain(coeffs);
    if (!(g > 1)) {
        throw InfeasibleError("locus-invalid", "AB^2 must exceed 1 for the locus to advance");
    }
    if (!(z > 0)) {
        throw InfeasibleError("locus-invalid", "z must be positive");
    }
    const double B = coeffs.b_coeff;
    const double C = coeffs.c_coeff;
    const double link = std::pow(g, -z);  // eta^{1/n} on the locus
    LocusProbabilities p;
    p.p_x = at_least_one(std::pow(link * B, b1 + 1), b0);
    p.p_z = std::pow(at_least_one(link * B, b1 + 1), b0);
    p.p_b = std::pow(g, 1 - z) / m;
    p.p_end = at_least_one(std::pow(g, -z / 2) * C, m);
    return p;
}

EnvelopeParams analytic_lb(int m, int b0, int b1, const DerivedConstants &consts,
                           const ChainCoefficients &coeffs, double p_cn, double z) {
    auto e = exponent_at(z, m, b0, b1, coeffs);
    EnvelopeParams out;
    out.z = z;
    out.q1 = std::exp(e.log_q1);
    out.q2 = e.q2;
    out.q3 = e.q3;
    out.d_coeff = e.q3 * p_cn / (2.0 * m * e.q2);
    out.s_exp = e.s;
    out.l0_km = repeater_spacing(z, coeffs, consts.alpha);
    out.l0_no_z_km = std::log(locus_gain(coeffs)) / consts.alpha;
    return out;
}

double optimize_z(int m, int b0, int b1, const DerivedConstants &consts,
                  const ChainCoefficients &coeffs, const ZSearchOptions &opts) {
    (void)consts;
    if (!(opts.z_lo > 0 && opts.z_hi > opts.z_lo) || opts.grid_points < 3) {
        throw ConfigError("z", "search interval must satisfy 0 < z_lo < z_hi with >= 3 points");
    }
    auto s_of = [&](double z) {
        double s = exponent_at(z, m, b0, b1, coeffs).s;
        return std::isnan(s) ? std::numeric_limits<double>::infinity() : s;
    };
    const double ratio = std::pow(opts.z_hi / opts.z_lo, 1.0 / (opts.grid_points - 1));
    int best = 0;
    double best_s = std::numeric_limits<double>::infinity();
    for (int i = 0; i < opts.grid_points; i++) {
        double s = s_of(opts.z_lo * std::pow(ratio, i));
        if (s < best_s) {
            best_s = s;
            best = i;
        }
    }
    if (best == 0 || best == opts.grid_points - 1) {
        throw InfeasibleError("no-interior-minimum",
                              "s(z) has no interior minimum on the search interval");
    }
    const double lo = opts.z_lo * std::pow(ratio, best - 1);
    const double hi = opts.z_lo * std::pow(ratio, best + 1);
    return golden_section_minimize(s_of, lo, hi, opts.rel_tol);
}

EnvelopeParams optimal_lb(int m, const BranchingVector &b, const DerivedConstants &consts,
                          double p_cn, const ZSearchOptions &opts) {
    if (b.size() != 2) {
        throw ConfigError("b", "the analytic lower bound needs a depth-2 branching vector");
    }
    auto coeffs = chain_coefficients(consts, m, k_of_design(m, b));
    double z = optimize_z(m, b[0], b[1], consts, coeffs, opts);
    return analytic_lb(m, b[0], b[1], consts, coeffs, p_cn, z);
}

double repeater_spacing(double z, const ChainCoefficients &coeffs, double alpha) {
    return z * std::log(locus_gain(coeffs)) / alpha;
}

RatePoint envelope_at(const ChainModel &model, double range_km,
                      const NumericEnvelopeOptions &opts, bool *saturated) {
    RatePoint best{range_km, 0.0, 0};
    double best_log = -std::numeric_limits<double>::infinity();
    double prev = best_log;
    int decreasing = 0;
    int n = 1;
    for (; n <= opts.n_max; n++) {
        double lr = model.log_rate(range_km, n);
        if (lr > best_log || best.n_opt == 0) {
            best_log = lr;
            best.n_opt = n;
        }
        decreasing = lr < prev ? decreasing + 1 : 0;
        prev = lr;
        if (decreasing >= opts.patience) {
            break;
        }
    }
    best.rate_bits_per_mode = std::exp(best_log);
    if (saturated != nullptr) {
        *saturated = best.n_opt == opts.n_max;
    }
    return best;
}

NumericEnvelope numeric_envelope(const ChainModel &model, std::span<const double> grid_km,
                                 const NumericEnvelopeOptions &opts, std::ostream *diag) {
    for (size_t i = 1; i < grid_km.size(); i++) {
        if (!(grid_km[i] > grid_km[i - 1])) {
            throw ConfigError("L", "range grid must be strictly increasing");
        }
    }
    NumericEnvelope env;
    env.points.reserve(grid_km.size());
    for (double L : grid_km) {
        bool sat = false;
        env.points.push_back(envelope_at(model, L, opts, &sat));
        if (sat) {
            env.saturated++;
            if (diag != nullptr) {
                *diag << "warning: envelope maximum at L=" << L << " km sits at n_max="
                      << opts.n_max << "; widen the n range\n";
            }
        }
    }
    return env;
}

std::vector<RatePoint> lower_bound_points(const EnvelopeParams &lb,
                                          std::span<const double> grid_km, double alpha) {
    std::vector<RatePoint> out;
    out.reserve(grid_km.size());
    for (double L : grid_km) {
        int n = lb.l0_km > 0 ? static_cast<int>(std::lround(L / lb.l0_km)) : 0;
        out.push_back({L, lb.rate_at_range(L, alpha), n});
    }
    return out;
}

double crossover_distance(std::span<const RatePoint> curve, double alpha) {
    auto margin = [&](const RatePoint &p) {
        return std::log(p.rate_bits_per_mode) - std::log(r_direct(p.range_km, alpha));
    };
    for (size_t i = 0; i < curve.size(); i++) {
        double g = margin(curve[i]);
        if (g > 0) {
            if (i == 0) {
                return curve[0].range_km;
            }
            double g0 = margin(curve[i - 1]);
            double L0 = curve[i - 1].range_km;
            double L1 = curve[i].range_km;
            if (!std::isfinite(g0)) {
                return L1;
            }
            return L0 + (L1 - L0) * (-g0) / (g - g0);
        }
    }
    throw InfeasibleError("no-crossover", "curve never exceeds R_direct on the grid");
}

}  // namespace optorep
