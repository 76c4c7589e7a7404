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

#include "optorep/treecode.h"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "optorep/errors.h"

namespace optorep {

BranchingVector::BranchingVector(std::vector<int> branches) : branches_(std::move(branches)) {
    if (branches_.empty()) {
        throw ConfigError("b", "branching vector must be non-empty");
    }
    for (int v : branches_) {
        if (v < 1) {
            throw ConfigError("b", "every branching entry must be >= 1");
        }
    }
}

BranchingVector BranchingVector::parse(std::string_view text) {
    std::vector<int> out;
    while (!text.empty()) {
        auto comma = text.find(',');
        auto token = text.substr(0, comma);
        while (!token.empty() && token.front() == ' ') {
            token.remove_prefix(1);
        }
        while (!token.empty() && token.back() == ' ') {
            token.remove_suffix(1);
        }
        int v = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
        if (ec != std::errc() || ptr != token.data() + token.size()) {
            throw ConfigError("b", "cannot parse branching entry '" + std::string(token) + "'");
        }
        out.push_back(v);
        if (comma == std::string_view::npos) {
            break;
        }
        text.remove_prefix(comma + 1);
    }
    return BranchingVector(std::move(out));
}

std::string BranchingVector::str() const {
    std::string s = "{";
    for (size_t i = 0; i < branches_.size(); i++) {
        if (i) {
            s += ",";
        }
        s += std::to_string(branches_[i]);
    }
    return s + "}";
}

namespace {

// 1 - (1 - t)^n without cancellation when t is small.
double one_minus_complement_pow(double t, int n) {
    if (t >= 1) {
        return n > 0 ? 1.0 : 0.0;
    }
    return -std::expm1(n * std::log1p(-t));
}

}  // namespace

int64_t tree_size(const BranchingVector &b) {
    int64_t total = 1;
    int64_t level = 1;
    for (int v : b.branches()) {
        level *= v;
        total += level;
    }
    return total;
}

void xi_fill(const BranchingVector &b, double eps, std::span<double> out) {
    const int d = b.depth_index();
    if (out.size() < static_cast<size_t>(d + 3)) {
        throw std::length_error("xi_fill: output span needs depth + 3 slots");
    }
    // Slots d+1 and d+2 hold the boundary xi = 0; the matching branch counts are 0.
    out[d + 1] = 0;
    out[d + 2] = 0;
    auto branch = [&](int i) { return i <= d ? b[i] : 0; };
    for (int i = d; i >= 0; i--) {
        double inner = std::pow(1 - eps + eps * out[i + 2], branch(i + 1));
        out[i] = one_minus_complement_pow((1 - eps) * inner, branch(i));
    }
}

std::vector<double> xi_all(const BranchingVector &b, double eps) {
    std::vector<double> x(b.size() + 2);
    xi_fill(b, eps, x);
    x.resize(b.size());
    return x;
}

double xi(int i, const BranchingVector &b, double eps) {
    if (i < 0 || i > b.depth_index()) {
        throw std::out_of_range("xi: level index " + std::to_string(i) + " outside [0, " +
                                std::to_string(b.depth_index()) + "]");
    }
    return xi_all(b, eps)[i];
}

double p_x_general(const BranchingVector &b, double eps) {
    return xi_all(b, eps)[0];
}

double p_z_general(const BranchingVector &b, double eps) {
    auto x = xi_all(b, eps);
    double xi1 = x.size() > 1 ? x[1] : 0.0;
    return std::pow(1 - eps + eps * xi1, b[0]);
}

double p_x_depth2(int b0, int b1, double eta_link, double b_coeff) {
    double s = eta_link * b_coeff;
    return one_minus_complement_pow(std::pow(s, b1 + 1), b0);
}

double p_z_depth2(int b0, int b1, double eta_link, double b_coeff) {
    double s = eta_link * b_coeff;
    return std::pow(one_minus_complement_pow(s, b1 + 1), b0);
}

}  // namespace optorep
