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

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <random>
#include <thread>
#include <unordered_map>

#include "optorep/count_distribution.h"
#include "optorep/errors.h"

namespace optorep {

namespace {

// 1 - (1 - t)^n for real n.
double at_least_one(double t, double n) {
    if (t >= 1) {
        return n > 0 ? 1.0 : 0.0;
    }
    if (t <= 0) {
        return 0;
    }
    return -std::expm1(n * std::log1p(-t));
}

uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// SplitMix64. Counter-based seeding keeps every trial's stream independent of scheduling.
class SplitMix64 {
   public:
    using result_type = uint64_t;
    SplitMix64(uint64_t seed, uint64_t stream)
        : state_(mix64(seed + 0x9e3779b97f4a7c15ULL * (stream + 1)) ^ mix64(stream)) {
    }
    static constexpr result_type min() {
        return 0;
    }
    static constexpr result_type max() {
        return ~uint64_t{0};
    }
    result_type operator()() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

   private:
    uint64_t state_;
};

int64_t draw_binomial(SplitMix64 &rng, int64_t n, double p) {
    if (n <= 0 || p <= 0) {
        return 0;
    }
    if (p >= 1) {
        return n;
    }
    std::binomial_distribution<int64_t> dist(n, p);
    return dist(rng);
}

int64_t ghz_attempts(double n_sources) {
    return static_cast<int64_t>(std::floor(n_sources / 6));
}

void check_sources(double n_sources) {
    if (!(n_sources >= 0) || !std::isfinite(n_sources)) {
        throw ConfigError("n_sources", "source count must be finite and non-negative");
    }
}

bool run_trial(const FusionSchedule &sched, int64_t x, SplitMix64 &rng,
               std::vector<int64_t> &counts) {
    counts = apportion(x, sched.weights);
    for (size_t i = 0; i < counts.size(); i++) {
        if (sched.measured[i]) {
            counts[i] = draw_binomial(rng, counts[i], sched.probs.measured_survival);
        }
    }
    size_t width = counts.size();
    for (int level = 1; level <= sched.k; level++) {
        const double p = sched.probs.level_success[static_cast<size_t>(level - 1)];
        width /= 2;
        for (size_t i = 0; i < width; i++) {
            counts[i] = draw_binomial(rng, std::min(counts[2 * i], counts[2 * i + 1]), p);
        }
    }
    return counts[0] >= 1;
}

}  // namespace

double NaiveMultiplex::source_count(int k) const {
    return 6.0 * static_cast<double>(n_ghz) * static_cast<double>(n_meas) *
           std::pow(2.0 * static_cast<double>(n_b), k);
}

void NaiveMultiplex::validate() const {
    if (n_b < 1) {
        throw ConfigError("n_b", "must be >= 1");
    }
    if (n_ghz < 1) {
        throw ConfigError("n_ghz", "must be >= 1");
    }
    if (n_meas < 1) {
        throw ConfigError("n_meas", "must be >= 1");
    }
}

const char *naive_final_stage_name(NaiveFinalStage s) {
    switch (s) {
        case NaiveFinalStage::cascade:
            return "cascade";
        case NaiveFinalStage::spec_reading:
            return "last-pair";
        case NaiveFinalStage::printed:
            return "printed";
    }
    return "?";
}

NaiveFinalStage parse_naive_final_stage(const char *name) {
    if (std::strcmp(name, "cascade") == 0) {
        return NaiveFinalStage::cascade;
    }
    if (std::strcmp(name, "last-pair") == 0) {
        return NaiveFinalStage::spec_reading;
    }
    if (std::strcmp(name, "printed") == 0) {
        return NaiveFinalStage::printed;
    }
    throw ConfigError("naive-stage", std::string("unknown final stage '") + name + "'");
}

double naive_pc1(const NaiveMultiplex &mux, int k, int m, const DerivedConstants &consts,
                 NaiveFinalStage stage) {
    mux.validate();
    if (k < 1) {
        throw ConfigError("k", "must be >= 1");
    }
    if (m < 1) {
        throw ConfigError("m", "must be >= 1");
    }
    auto fusion = [&](int level) {
        double mu = consts.eta_ghz * std::pow(consts.p_chip, level);
        return mu * mu / 2;
    };
    double p = at_least_one(consts.p_ghz, static_cast<double>(mux.n_ghz));
    const int multiplexed = stage == NaiveFinalStage::cascade ? k : k - 1;
    for (int level = 1; level <= multiplexed; level++) {
        p = at_least_one(p * p * fusion(level), static_cast<double>(mux.n_b));
    }
    const double convert = std::pow(consts.eta_ghz * std::pow(consts.p_chip, k + 1), 4 * m + 1);
    const double copies = static_cast<double>(mux.n_meas);
    switch (stage) {
        case NaiveFinalStage::cascade:
            return at_least_one(p * convert, copies);
        case NaiveFinalStage::spec_reading:
            return at_least_one(p * p * fusion(k) * convert, copies);
        case NaiveFinalStage::printed:
            return 1 - std::pow(fusion(k) * convert, copies);
    }
    return 0;
}

NaiveOptimum best_naive_multiplex(double n_sources, int k, int m, const DerivedConstants &consts,
                                  NaiveFinalStage stage, int inner_max) {
    check_sources(n_sources);
    NaiveOptimum best;
    const double leaves = std::pow(2.0, k);
    for (int64_t ng = 1; ng <= inner_max; ng++) {
        for (int64_t nm = 1; nm <= inner_max; nm++) {
            const double per_copy = n_sources / (6.0 * static_cast<double>(ng * nm));
            if (per_copy < leaves) {
                break;
            }
            NaiveMultiplex mux{static_cast<int64_t>(std::floor(std::pow(per_copy, 1.0 / k) / 2)),
                               ng, nm};
            while (NaiveMultiplex{mux.n_b + 1, ng, nm}.source_count(k) <= n_sources) {
                mux.n_b++;
            }
            while (mux.n_b > 0 && mux.source_count(k) > n_sources) {
                mux.n_b--;
            }
            if (mux.n_b < 1) {
                continue;
            }
            double p = naive_pc1(mux, k, m, consts, stage);
            if (p > best.p_c1 || (p == best.p_c1 && best.p_c1 > 0 && mux.n_b > best.mux.n_b)) {
                best.p_c1 = p;
                best.mux = mux;
            }
        }
    }
    return best;
}

CascadeProbabilities cascade_probabilities(const DerivedConstants &consts, int k) {
    if (k < 1) {
        throw ConfigError("k", "must be >= 1");
    }
    CascadeProbabilities probs;
    probs.p_ghz = consts.p_ghz;
    probs.measured_survival = consts.p_chip * consts.eta_ghz;
    for (int level = 1; level <= k; level++) {
        double mu = consts.eta_ghz * std::pow(consts.p_chip, level + 1);
        probs.level_success.push_back(mu * mu * consts.boosted_pair_factor);
    }
    return probs;
}

int FusionSchedule::measured_leaves() const {
    return static_cast<int>(std::count(measured.begin(), measured.end(), uint8_t{1}));
}

FusionSchedule schedule_with_measured(int k, std::span<const int> measured_positions,
                                      CascadeProbabilities probs) {
    if (k < 1 || k > 30) {
        throw ConfigError("k", "fusion depth must be in [1, 30]");
    }
    if (static_cast<int>(probs.level_success.size()) != k) {
        throw ConfigError("k", "need one fusion success probability per level");
    }
    if (!(probs.measured_survival > 0 && probs.measured_survival <= 1)) {
        throw ConfigError("measured_survival", "must be in (0, 1]");
    }
    FusionSchedule s;
    s.k = k;
    const int64_t banks = int64_t{1} << k;
    s.measured.assign(static_cast<size_t>(banks), 0);
    for (int pos : measured_positions) {
        if (pos < 0 || pos >= banks) {
            throw ConfigError("measured", "leaf position out of range");
        }
        s.measured[static_cast<size_t>(pos)] = 1;
    }
    s.weights.resize(s.measured.size());
    for (size_t i = 0; i < s.measured.size(); i++) {
        s.weights[i] = s.measured[i] ? 1 / probs.measured_survival : 1.0;
    }
    s.probs = std::move(probs);
    return s;
}

FusionSchedule build_schedule(int k, int m, const DerivedConstants &consts) {
    if (m < 1) {
        throw ConfigError("m", "must be >= 1");
    }
    if (k < 1 || k > 30) {
        throw ConfigError("k", "fusion depth must be in [1, 30]");
    }
    const int64_t banks = int64_t{1} << k;
    const int64_t needed = 4 * int64_t{m} + 1;
    if (needed > banks) {
        throw InfeasibleError("design-infeasible", "4m+1 = " + std::to_string(needed) +
                                                       " measured photons exceed 2^k = " +
                                                       std::to_string(banks) + " leaf banks");
    }
    std::vector<int> positions;
    for (int64_t i = 0; i < needed; i++) {
        positions.push_back(static_cast<int>(i * banks / needed));
    }
    return schedule_with_measured(k, positions, cascade_probabilities(consts, k));
}

std::vector<int64_t> apportion(int64_t total, std::span<const double> weights) {
    if (total < 0) {
        throw ConfigError("total", "must be non-negative");
    }
    const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (weights.empty() || !(sum > 0)) {
        throw ConfigError("weights", "need at least one positive weight");
    }
    std::vector<int64_t> out(weights.size());
    std::vector<double> frac(weights.size());
    int64_t assigned = 0;
    for (size_t i = 0; i < weights.size(); i++) {
        double share = static_cast<double>(total) * weights[i] / sum;
        out[i] = static_cast<int64_t>(std::floor(share));
        frac[i] = share - static_cast<double>(out[i]);
        assigned += out[i];
    }
    int64_t left = total - assigned;
    if (left < 0) {
        // Rounding pushed a floor past the exact share; take back from the smallest remainders.
        std::vector<size_t> order(weights.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](size_t a, size_t b) { return frac[a] < frac[b]; });
        for (size_t i = 0; left < 0; i = (i + 1) % order.size()) {
            if (out[order[i]] > 0) {
                out[order[i]]--;
                left++;
            }
        }
        return out;
    }
    std::vector<size_t> order(weights.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return frac[a] > frac[b]; });
    for (size_t i = 0; left > 0; i = (i + 1) % order.size()) {
        out[order[i]]++;
        left--;
    }
    return out;
}

McEstimate improved_pc1_mc(double n_sources, const FusionSchedule &sched, int64_t trials,
                           uint64_t seed, SourceKind kind, int threads) {
    check_sources(n_sources);
    if (trials < 1) {
        throw ConfigError("trials", "must be >= 1");
    }
    const int64_t attempts = ghz_attempts(n_sources);
    const int64_t direct = static_cast<int64_t>(std::floor(n_sources));
    auto run_range = [&](int64_t begin, int64_t end) {
        int64_t hits = 0;
        std::vector<int64_t> counts;
        for (int64_t t = begin; t < end; t++) {
            SplitMix64 rng(seed, static_cast<uint64_t>(t));
            int64_t x = kind == SourceKind::single_photon
                            ? draw_binomial(rng, attempts, sched.probs.p_ghz)
                            : direct;
            hits += run_trial(sched, x, rng, counts) ? 1 : 0;
        }
        return hits;
    };

    int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    workers = static_cast<int>(std::clamp<int64_t>(workers, 1, std::min<int64_t>(trials, 64)));
    int64_t successes = 0;
    if (workers == 1) {
        successes = run_range(0, trials);
    } else {
        std::vector<int64_t> partial(static_cast<size_t>(workers), 0);
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; w++) {
            int64_t begin = trials * w / workers;
            int64_t end = trials * (w + 1) / workers;
            pool.emplace_back([&, w, begin, end] { partial[static_cast<size_t>(w)] = run_range(begin, end); });
        }
        for (auto &th : pool) {
            th.join();
        }
        successes = std::accumulate(partial.begin(), partial.end(), int64_t{0});
    }
    McEstimate est;
    est.successes = successes;
    est.trials = trials;
    est.seed = seed;
    est.estimate = static_cast<double>(successes) / static_cast<double>(trials);
    est.std_error = std::sqrt(est.estimate * (1 - est.estimate) / static_cast<double>(trials));
    return est;
}

namespace {

// Memoized subtree distributions for a fixed schedule. Bank counts from one x to the next differ
// only near the apportionment boundary, so most subtrees are shared across x.
class CascadePropagator {
   public:
    CascadePropagator(const FusionSchedule &sched, const ExactOptions &opts)
        : sched_(sched), opts_(opts), measured_rows_(sched.probs.measured_survival) {
        for (double p : sched.probs.level_success) {
            level_rows_.emplace_back(p);
        }
    }

    const CountDistribution &root(const std::vector<int64_t> &counts) {
        if (nodes_.size() > 400'000) {
            nodes_.clear();
            leaf_ids_.clear();
            inner_ids_.clear();
        }
        std::vector<uint32_t> ids(counts.size());
        for (size_t i = 0; i < counts.size(); i++) {
            if (counts[i] > opts_.cap) {
                throw InfeasibleError("cap-too-small",
                                      "a bank needs " + std::to_string(counts[i]) +
                                          " states but the cap is " + std::to_string(opts_.cap));
            }
            ids[i] = leaf(counts[i], sched_.measured[i] != 0);
        }
        size_t width = ids.size();
        for (int level = 1; level <= sched_.k; level++) {
            width /= 2;
            for (size_t i = 0; i < width; i++) {
                ids[i] = inner(level, ids[2 * i], ids[2 * i + 1]);
            }
        }
        return nodes_[ids[0]];
    }

   private:
    uint32_t leaf(int64_t count, bool measured) {
        uint64_t key = (static_cast<uint64_t>(count) << 1) | (measured ? 1 : 0);
        auto it = leaf_ids_.find(key);
        if (it != leaf_ids_.end()) {
            return it->second;
        }
        CountDistribution d = CountDistribution::point(count);
        if (measured) {
            d = d.thinned(measured_rows_);
            d.prune(opts_.prune);
        }
        return store(leaf_ids_, key, std::move(d));
    }

    uint32_t inner(int level, uint32_t left, uint32_t right) {
        uint64_t key = (static_cast<uint64_t>(level) << 58) | (static_cast<uint64_t>(left) << 29) |
                       static_cast<uint64_t>(right);
        auto it = inner_ids_.find(key);
        if (it != inner_ids_.end()) {
            return it->second;
        }
        CountDistribution d = min_of(nodes_[left], nodes_[right])
                                  .thinned(level_rows_[static_cast<size_t>(level - 1)]);
        d.prune(opts_.prune);
        return store(inner_ids_, key, std::move(d));
    }

    uint32_t store(std::unordered_map<uint64_t, uint32_t> &index, uint64_t key,
                   CountDistribution d) {
        auto id = static_cast<uint32_t>(nodes_.size());
        nodes_.push_back(std::move(d));
        index.emplace(key, id);
        return id;
    }

    const FusionSchedule &sched_;
    const ExactOptions &opts_;
    BinomialRowCache measured_rows_;
    std::vector<BinomialRowCache> level_rows_;
    std::vector<CountDistribution> nodes_;
    std::unordered_map<uint64_t, uint32_t> leaf_ids_;
    std::unordered_map<uint64_t, uint32_t> inner_ids_;
};

}  // namespace

ExactResult improved_pc1_exact(double n_sources, const FusionSchedule &sched, SourceKind kind,
                               const ExactOptions &opts) {
    check_sources(n_sources);
    if (opts.cap < 1) {
        throw ConfigError("cap", "must be >= 1");
    }
    BinomialRow totals;
    if (kind == SourceKind::single_photon) {
        totals = binomial_row(ghz_attempts(n_sources), sched.probs.p_ghz, opts.window);
    } else {
        totals.first = static_cast<int64_t>(std::floor(n_sources));
        totals.masses = {1.0};
    }
    CascadePropagator prop(sched, opts);
    ExactResult out;
    double covered = 0;
    for (size_t i = 0; i < totals.masses.size(); i++) {
        const double w = totals.masses[i];
        covered += w;
        const int64_t x = totals.first + static_cast<int64_t>(i);
        const CountDistribution &root = prop.root(apportion(x, sched.weights));
        out.p_c1 += w * root.nonzero();
        out.truncated_mass += w * std::max(0.0, 1 - root.total());
    }
    out.truncated_mass += std::max(0.0, 1 - covered);
    out.p_c1 = std::clamp(out.p_c1, 0.0, 1.0);
    return out;
}

double pcn(double p_c1, int n) {
    if (!(p_c1 >= 0 && p_c1 <= 1)) {
        throw ConfigError("p_c1", "must be in [0, 1]");
    }
    if (n < 1) {
        throw ConfigError("n", "must be >= 1");
    }
    return std::pow(p_c1, n);
}

const char *resource_scheme_name(ResourceScheme s) {
    switch (s) {
        case ResourceScheme::naive:
            return "naive";
        case ResourceScheme::improved:
            return "improved";
        case ResourceScheme::ghz_primitive:
            return "ghz-primitive";
    }
    return "?";
}

ResourceScheme parse_resource_scheme(const char *name) {
    if (std::strcmp(name, "naive") == 0) {
        return ResourceScheme::naive;
    }
    if (std::strcmp(name, "improved") == 0 || std::strcmp(name, "new") == 0) {
        return ResourceScheme::improved;
    }
    if (std::strcmp(name, "ghz-primitive") == 0 || std::strcmp(name, "ghz_primitive") == 0) {
        return ResourceScheme::ghz_primitive;
    }
    throw ConfigError("scheme", std::string("unknown resource scheme '") + name + "'");
}

const char *pc_method_name(PcMethod m) {
    switch (m) {
        case PcMethod::automatic:
            return "auto";
        case PcMethod::mc:
            return "mc";
        case PcMethod::exact:
            return "exact";
    }
    return "?";
}

PcMethod parse_pc_method(const char *name) {
    if (std::strcmp(name, "auto") == 0) {
        return PcMethod::automatic;
    }
    if (std::strcmp(name, "mc") == 0) {
        return PcMethod::mc;
    }
    if (std::strcmp(name, "exact") == 0) {
        return PcMethod::exact;
    }
    throw ConfigError("method", std::string("unknown method '") + name + "'");
}

namespace {

PcMethod resolve_method(PcMethod requested, int k) {
    if (requested != PcMethod::automatic) {
        return requested;
    }
    return k <= 8 ? PcMethod::exact : PcMethod::mc;
}

}  // namespace

double node_success(ResourceScheme scheme, double n_sources, int k, int m,
                    const DerivedConstants &consts, const MinSourcesOptions &opts,
                    NaiveMultiplex *mux) {
    if (scheme == ResourceScheme::naive) {
        auto best = best_naive_multiplex(n_sources, k, m, consts, opts.naive_stage);
        if (mux != nullptr) {
            *mux = best.mux;
        }
        return best.p_c1;
    }
    const auto sched = build_schedule(k, m, consts);
    const SourceKind kind =
        scheme == ResourceScheme::improved ? SourceKind::single_photon : SourceKind::ghz_primitive;
    if (resolve_method(opts.method, k) == PcMethod::exact) {
        return improved_pc1_exact(n_sources, sched, kind).p_c1;
    }
    return improved_pc1_mc(n_sources, sched, opts.mc_trials, opts.seed, kind, opts.threads)
        .estimate;
}

MinSourcesResult min_sources(ResourceScheme scheme, int k, int m, int n, double target_pcn,
                             const DerivedConstants &consts, const MinSourcesOptions &opts) {
    if (!(target_pcn > 0 && target_pcn < 1)) {
        throw ConfigError("target", "target P_cn must be in (0, 1)");
    }
    if (n < 1) {
        throw ConfigError("n", "must be >= 1");
    }
    if (!(opts.rel_resolution > 0)) {
        throw ConfigError("rel_resolution", "must be positive");
    }
    if (scheme != ResourceScheme::naive) {
        build_schedule(k, m, consts);  // design check before searching
    }
    const double goal = std::pow(target_pcn, 1.0 / n);
    const double ceiling =
        opts.ceiling > 0 ? opts.ceiling : (scheme == ResourceScheme::naive ? 1e16 : 1e10);
    const double leaves = std::ldexp(1.0, k);
    double lo = scheme == ResourceScheme::ghz_primitive ? leaves : 6 * leaves;

    MinSourcesResult res;
    res.method = scheme == ResourceScheme::naive ? PcMethod::exact : resolve_method(opts.method, k);
    auto eval = [&](double budget, NaiveMultiplex *mux) {
        return node_success(scheme, std::floor(budget), k, m, consts, opts, mux);
    };

    NaiveMultiplex mux;
    double p_hi = eval(lo, &mux);
    double hi = lo;
    if (p_hi >= goal) {
        lo = hi;
    } else {
        while (true) {
            lo = hi;
            hi = std::min(hi * 2, ceiling);
            p_hi = eval(hi, &mux);
            if (p_hi >= goal) {
                break;
            }
            if (hi >= ceiling) {
                throw InfeasibleError("unreachable", "P_cn target not reached within " +
                                                         std::to_string(ceiling) + " sources");
            }
        }
        while (hi / lo > 1 + opts.rel_resolution && hi - lo > 1) {
            double mid = std::sqrt(lo * hi);
            NaiveMultiplex mid_mux;
            double p = eval(mid, &mid_mux);
            if (p >= goal) {
                hi = mid;
                p_hi = p;
                mux = mid_mux;
            } else {
                lo = mid;
            }
        }
    }
    res.n_sources = std::floor(hi);
    res.p_c1 = p_hi;
    res.p_cn = std::pow(p_hi, n);
    if (scheme == ResourceScheme::naive) {
        res.mux = mux;
    }
    return res;
}

}  // namespace optorep
