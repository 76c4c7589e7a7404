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

#ifndef OPTOREP_COUNT_DISTRIBUTION_H
#define OPTOREP_COUNT_DISTRIBUTION_H

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace optorep {

/// A run of binomial masses Bin(trials, p) starting at `first`. Entries below the floor used to
/// build the row are dropped from both tails.
struct BinomialRow {
    int64_t first = 0;
    std::vector<double> masses;
};

/// Mode-centred evaluation, so large trial counts neither underflow nor lose the peak.
BinomialRow binomial_row(int64_t trials, double p, double floor = 1e-300);

/// Lazily built rows Bin(j, p) for one fixed p.
class BinomialRowCache {
   public:
    explicit BinomialRowCache(double p, double floor = 1e-300) : p_(p), floor_(floor) {
    }
    const BinomialRow &row(int64_t trials);
    double p() const noexcept {
        return p_;
    }

   private:
    double p_;
    double floor_;
    std::unordered_map<int64_t, BinomialRow> rows_;
};

/// Probability mass over non-negative integer counts, stored as a window [offset, offset + size).
class CountDistribution {
   public:
    /// Point mass at zero.
    CountDistribution() = default;
    static CountDistribution point(int64_t value);
    static CountDistribution binomial(int64_t trials, double p);

    int64_t offset() const noexcept {
        return offset_;
    }
    const std::vector<double> &masses() const noexcept {
        return pmf_;
    }
    int64_t min_value() const noexcept {
        return offset_;
    }
    int64_t max_value() const noexcept {
        return offset_ + static_cast<int64_t>(pmf_.size()) - 1;
    }
    double at(int64_t value) const;
    double total() const;
    double mean() const;
    /// Pr[count >= 1].
    double nonzero() const;

    /// Distribution of Bin(Y, p) with Y drawn from this distribution.
    CountDistribution thinned(BinomialRowCache &rows) const;
    CountDistribution thinned(double p) const;

    /// Drops tail entries below `threshold` and returns the mass removed.
    double prune(double threshold);

   private:
    CountDistribution(int64_t offset, std::vector<double> pmf);
    friend CountDistribution min_of(const CountDistribution &a, const CountDistribution &b);

    int64_t offset_ = 0;
    std::vector<double> pmf_{1.0};
};

/// Distribution of min(Y1, Y2) for independent Y1, Y2.
CountDistribution min_of(const CountDistribution &a, const CountDistribution &b);

}  // namespace optorep

#endif
