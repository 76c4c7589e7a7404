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

#include <algorithm>
#include <cmath>

#include "optorep/errors.h"

namespace optorep {

BinomialRow binomial_row(int64_t trials, double p, double floor) {
    if (trials < 0 || !(p >= 0 && p <= 1)) {
        throw ConfigError("p", "binomial needs trials >= 0 and p in [0, 1]");
    }
    BinomialRow row;
    if (trials == 0 || p == 0) {
        row.first = 0;
        row.masses = {1.0};
        return row;
    }
    if (p == 1) {
        row.first = trials;
        row.masses = {1.0};
        return row;
    }
    const double n = static_cast<double>(trials);
    int64_t mode = std::min<int64_t>(trials, static_cast<int64_t>(std::floor((n + 1) * p)));
    const double km = static_cast<double>(mode);
    const double log_peak = std::lgamma(n + 1) - std::lgamma(km + 1) - std::lgamma(n - km + 1) +
                            km * std::log(p) + (n - km) * std::log1p(-p);
    const double odds = p / (1 - p);

    std::vector<double> below;
    double v = std::exp(log_peak);
    for (int64_t j = mode; j > 0;) {
        v *= static_cast<double>(j) / static_cast<double>(trials - j + 1) / odds;
        if (v < floor) {
            break;
        }
        j--;
        below.push_back(v);
    }
    row.first = mode - static_cast<int64_t>(below.size());
    row.masses.assign(below.rbegin(), below.rend());
    v = std::exp(log_peak);
    row.masses.push_back(v);
    for (int64_t j = mode; j < trials; j++) {
        v *= static_cast<double>(trials - j) / static_cast<double>(j + 1) * odds;
        if (v < floor) {
            break;
        }
        row.masses.push_back(v);
    }
    // lgamma at large n leaves ~1e-9 relative error in the peak; the ratios are far better.
    double sum = 0;
    for (double m : row.masses) {
        sum += m;
    }
    for (double &m : row.masses) {
        m /= sum;
    }
    return row;
}

const BinomialRow &BinomialRowCache::row(int64_t trials) {
    auto it = rows_.find(trials);
    if (it != rows_.end()) {
        return it->second;
    }
    return rows_.emplace(trials, binomial_row(trials, p_, floor_)).first->second;
}

CountDistribution::CountDistribution(int64_t offset, std::vector<double> pmf)
    : offset_(offset), pmf_(std::move(pmf)) {
}

CountDistribution CountDistribution::point(int64_t value) {
    if (value < 0) {
        throw ConfigError("count", "counts are non-negative");
    }
    return CountDistribution(value, {1.0});
}

CountDistribution CountDistribution::binomial(int64_t trials, double p) {
    auto row = binomial_row(trials, p);
    return CountDistribution(row.first, std::move(row.masses));
}

double CountDistribution::at(int64_t value) const {
    if (value < offset_ || value > max_value()) {
        return 0;
    }
    return pmf_[static_cast<size_t>(value - offset_)];
}

double CountDistribution::total() const {
    double s = 0;
    for (double v : pmf_) {
        s += v;
    }
    return s;
}

double CountDistribution::mean() const {
    double s = 0;
    for (size_t i = 0; i < pmf_.size(); i++) {
        s += pmf_[i] * static_cast<double>(offset_ + static_cast<int64_t>(i));
    }
    return s;
}

double CountDistribution::nonzero() const {
    return total() - at(0);
}

CountDistribution CountDistribution::thinned(BinomialRowCache &rows) const {
    std::vector<double> out(static_cast<size_t>(max_value() + 1), 0.0);
    int64_t lowest = max_value() + 1;
    for (size_t i = 0; i < pmf_.size(); i++) {
        double w = pmf_[i];
        if (w == 0) {
            continue;
        }
        const auto &row = rows.row(offset_ + static_cast<int64_t>(i));
        lowest = std::min(lowest, row.first);
        for (size_t j = 0; j < row.masses.size(); j++) {
            out[static_cast<size_t>(row.first) + j] += w * row.masses[j];
        }
    }
    if (lowest > max_value()) {
        return CountDistribution();
    }
    size_t hi = out.size();
    while (hi > static_cast<size_t>(lowest) + 1 && out[hi - 1] == 0) {
        hi--;
    }
    return CountDistribution(lowest, std::vector<double>(out.begin() + lowest, out.begin() + hi));
}

CountDistribution CountDistribution::thinned(double p) const {
    BinomialRowCache rows(p);
    return thinned(rows);
}

double CountDistribution::prune(double threshold) {
    size_t lo = 0;
    size_t hi = pmf_.size();
    double dropped = 0;
    while (hi - lo > 1 && pmf_[lo] < threshold) {
        dropped += pmf_[lo++];
    }
    while (hi - lo > 1 && pmf_[hi - 1] < threshold) {
        dropped += pmf_[--hi];
    }
    if (lo > 0 || hi < pmf_.size()) {
        offset_ += static_cast<int64_t>(lo);
        pmf_ = std::vector<double>(pmf_.begin() + static_cast<std::ptrdiff_t>(lo),
                                   pmf_.begin() + static_cast<std::ptrdiff_t>(hi));
    }
    return dropped;
}

CountDistribution min_of(const CountDistribution &a, const CountDistribution &b) {
    // Pr[min >= t] = Pr[a >= t] Pr[b >= t].
    const int64_t lo = std::min(a.min_value(), b.min_value());
    const int64_t hi = std::min(a.max_value(), b.max_value());
    const double ta = a.total();
    const double tb = b.total();
    auto survival = [](const CountDistribution &d, double total, int64_t t) {
        if (t <= d.min_value()) {
            return total;
        }
        double s = 0;
        for (int64_t v = d.max_value(); v >= t; v--) {
            s += d.at(v);
        }
        return s;
    };
    // Walk down from hi keeping running tail sums.
    std::vector<double> surv(static_cast<size_t>(hi - lo + 2), 0.0);
    double sa = survival(a, ta, hi + 1);
    double sb = survival(b, tb, hi + 1);
    surv[static_cast<size_t>(hi - lo + 1)] = sa * sb;
    for (int64_t t = hi; t >= lo; t--) {
        sa = t <= a.min_value() ? ta : sa + a.at(t);
        sb = t <= b.min_value() ? tb : sb + b.at(t);
        surv[static_cast<size_t>(t - lo)] = sa * sb;
    }
    std::vector<double> pmf(static_cast<size_t>(hi - lo + 1));
    for (size_t i = 0; i < pmf.size(); i++) {
        pmf[i] = std::max(0.0, surv[i] - surv[i + 1]);
    }
    int64_t offset = lo;
    size_t first = 0;
    while (first + 1 < pmf.size() && pmf[first] == 0) {
        first++;
    }
    offset += static_cast<int64_t>(first);
    return CountDistribution(offset, std::vector<double>(pmf.begin() + first, pmf.end()));
}

}  // namespace optorep
