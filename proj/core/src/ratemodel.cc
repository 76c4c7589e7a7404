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

#include "optorep/ratemodel.h"

#include <array>
#include <cmath>
#include <cstring>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "optorep/errors.h"

namespace optorep {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// exponent * log(base), with 0 * log(0) = 0.
double weighted_log(double exponent, double base) {
    if (exponent == 0) {
        return 0;
    }
    if (base <= 0) {
        return kNegInf;
    }
    return exponent * std::log(base);
}

// log(1 - (1 - p)^m).
double log_at_least_one(double p, int m) {
    if (p <= 0) {
        return kNegInf;
    }
    if (p >= 1) {
        return 0;
    }
    return std::log(-std::expm1(m * std::log1p(-p)));
}

struct Evaluation {
    LossRates loss;
    MeasurementProbabilities probs;
};

Evaluation evaluate(const DerivedConstants &consts, const ChainCoefficients &coeffs, int m,
                    const BranchingVector &tree, Scheme scheme, double range_km, int n) {
    // Per-link and half-link transmissivities, taken directly so they never underflow through
    // eta itself at long range.
    const double eta_link = std::exp(-consts.alpha * range_km / n);
    const double eta_half = std::exp(-consts.alpha * range_km / (2.0 * n));

    Evaluation e;
    e.loss.eps_trav = 1 - eta_half * coeffs.c_coeff;
    double bell_without_link;
    if (scheme == Scheme::improved) {
        e.loss.eps_stat = 1 - eta_link * coeffs.b_coeff;
        bell_without_link = coeffs.a_coeff * coeffs.b_coeff * coeffs.b_coeff / m;
    } else {
        e.loss.eps_stat = e.loss.eps_trav;
        bell_without_link = consts.plain_pair_factor * coeffs.c_coeff * coeffs.c_coeff;
    }

    auto &p = e.probs;
    const double eps = e.loss.eps_stat;
    std::array<double, 16> small;
    std::vector<double> large;
    std::span<double> xis(small);
    if (tree.size() + 2 > small.size()) {
        large.resize(tree.size() + 2);
        xis = large;
    }
    xi_fill(tree, eps, xis);
    const double xi1 = tree.size() > 1 ? xis[1] : 0.0;
    p.p_x = xis[0];
    const double log_pz = tree[0] * std::log1p(-eps * (1 - xi1));
    p.p_z = std::exp(log_pz);
    p.p_bell = bell_without_link * eta_link;
    const double log_pend = log_at_least_one(eta_half * coeffs.c_coeff, m);
    p.p_end = std::exp(log_pend);

    p.log_p_meas = (m > 1 ? 2.0 * (m - 1) * n * log_pz : 0.0) + weighted_log(2.0 * n, p.p_x) +
                   (n > 1 ? (n - 1) * log_at_least_one(p.p_bell, m) : 0.0) + 2 * log_pend;
    return e;
}

}  // namespace

const char *scheme_name(Scheme s) {
    return s == Scheme::improved ? "new" : "naive";
}

Scheme parse_scheme(const char *name) {
    if (std::strcmp(name, "new") == 0 || std::strcmp(name, "improved") == 0) {
        return Scheme::improved;
    }
    if (std::strcmp(name, "naive") == 0) {
        return Scheme::naive;
    }
    throw ConfigError("scheme", std::string("expected new|naive, got '") + name + "'");
}

int64_t cluster_photon_count(int m, const BranchingVector &b) {
    return (4 * int64_t{m} + 1) + 2 * int64_t{m} * tree_size(b);
}

int k_of_design(int m, const BranchingVector &b) {
    const int64_t n = cluster_photon_count(m, b) - 2;
    int k = 0;
    while ((int64_t{1} << k) < n) {
        k++;
    }
    return k;
}

int64_t naive_link_count(int m, const BranchingVector &b) {
    return 2 * int64_t{m} * tree_size(b);
}

void ChainConfig::validate() const {
    if (node_count < 1) {
        throw ConfigError("n", "node count must be >= 1");
    }
    if (channels < 1) {
        throw ConfigError("m", "channel count must be >= 1");
    }
    if (!(total_range_km >= 0) || !std::isfinite(total_range_km)) {
        throw ConfigError("L", "range must be finite and >= 0");
    }
    if (!(p_cn > 0 && p_cn <= 1)) {
        throw ConfigError("p_cn", "must lie in (0, 1]");
    }
}

LossRates loss_rates(const ChainConfig &cfg, const DerivedConstants &consts,
                     const ChainCoefficients &coeffs) {
    cfg.validate();
    return evaluate(consts, coeffs, cfg.channels, cfg.tree, cfg.scheme, cfg.total_range_km,
                    cfg.node_count)
        .loss;
}

double p_bell(const ChainConfig &cfg, const DerivedConstants &consts,
              const ChainCoefficients &coeffs) {
    cfg.validate();
    double pb = evaluate(consts, coeffs, cfg.channels, cfg.tree, cfg.scheme, cfg.total_range_km,
                         cfg.node_count)
                    .probs.p_bell;
    if (pb > 1) {
        throw InfeasibleError("invalid-configuration",
                              "Bell measurement success probability exceeds 1");
    }
    return pb;
}

double p_end(const ChainConfig &cfg, const DerivedConstants &consts,
             const ChainCoefficients &coeffs) {
    cfg.validate();
    return evaluate(consts, coeffs, cfg.channels, cfg.tree, cfg.scheme, cfg.total_range_km,
                    cfg.node_count)
        .probs.p_end;
}

MeasurementProbabilities measurement_probabilities(const ChainConfig &cfg,
                                                   const DerivedConstants &consts,
                                                   const ChainCoefficients &coeffs) {
    cfg.validate();
    auto probs = evaluate(consts, coeffs, cfg.channels, cfg.tree, cfg.scheme,
                          cfg.total_range_km, cfg.node_count)
                     .probs;
    if (probs.p_bell > 1) {
        throw InfeasibleError("invalid-configuration",
                              "Bell measurement success probability exceeds 1");
    }
    return probs;
}

double p_meas(const ChainConfig &cfg, const DerivedConstants &consts,
              const ChainCoefficients &coeffs) {
    return std::exp(measurement_probabilities(cfg, consts, coeffs).log_p_meas);
}

RatePoint rate_n(const ChainConfig &cfg, const DerivedConstants &consts,
                 const ChainCoefficients &coeffs) {
    const double divisor = cfg.scheme == Scheme::improved
                               ? 2.0 * cfg.channels
                               : static_cast<double>(naive_link_count(cfg.channels, cfg.tree));
    RatePoint r;
    r.range_km = cfg.total_range_km;
    r.n_opt = cfg.node_count;
    r.rate_bits_per_mode = cfg.p_cn * p_meas(cfg, consts, coeffs) / divisor;
    return r;
}

double r_direct(double range_km, double alpha) {
    if (range_km < 0) {
        throw ConfigError("L", "range must be >= 0");
    }
    const double x = alpha * range_km;
    const double eta = std::exp(-x);
    if (eta < 0.5) {
        return -std::log1p(-eta) / std::numbers::ln2;
    }
    // 1 - eta = -expm1(-x) stays accurate as x -> 0; diverges only at x == 0.
    return -std::log(-std::expm1(-x)) / std::numbers::ln2;
}

ChainModel::ChainModel(const DerivedConstants &consts, int m, BranchingVector tree,
                       Scheme scheme, double p_cn)
    : consts_(consts),
      m_(m),
      tree_(std::move(tree)),
      scheme_(scheme),
      p_cn_(p_cn),
      k_(k_of_design(m, tree_)),
      coeffs_(chain_coefficients(consts, m, k_)),
      divisor_(scheme == Scheme::improved ? 2.0 * m
                                          : static_cast<double>(naive_link_count(m, tree_))) {
    if (!(p_cn > 0 && p_cn <= 1)) {
        throw ConfigError("p_cn", "must lie in (0, 1]");
    }
}

double ChainModel::log_rate(double range_km, int n) const {
    if (n < 1) {
        throw ConfigError("n", "node count must be >= 1");
    }
    if (!(range_km >= 0)) {
        throw ConfigError("L", "range must be >= 0");
    }
    auto e = evaluate(consts_, coeffs_, m_, tree_, scheme_, range_km, n);
    return std::log(p_cn_ / divisor_) + e.probs.log_p_meas;
}

double ChainModel::rate(double range_km, int n) const {
    return std::exp(log_rate(range_km, n));
}

MeasurementProbabilities ChainModel::probabilities(double range_km, int n) const {
    return evaluate(consts_, coeffs_, m_, tree_, scheme_, range_km, n).probs;
}

ChainConfig ChainModel::config(double range_km, int n) const {
    ChainConfig cfg;
    cfg.total_range_km = range_km;
    cfg.node_count = n;
    cfg.channels = m_;
    cfg.tree = tree_;
    cfg.p_cn = p_cn_;
    cfg.scheme = scheme_;
    return cfg;
}

}  // namespace optorep
