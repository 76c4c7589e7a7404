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

#include "optorep/report.h"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <system_error>

#include "optorep/errors.h"

namespace optorep {

std::string format_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_csv_preamble(std::ostream &os, std::string_view config_json,
                        std::span<const std::string_view> columns) {
    os << "# config: " << config_json << "\n";
    for (size_t i = 0; i < columns.size(); i++) {
        os << (i ? "," : "") << columns[i];
    }
    os << "\n";
}

void write_rate_csv(std::ostream &os, std::string_view config_json,
                    std::span<const RatePoint> points, int n) {
    const std::string_view cols[] = {"L_km", "n", "rate_bits_per_mode"};
    write_csv_preamble(os, config_json, cols);
    for (const auto &p : points) {
        os << format_number(p.range_km) << "," << n << "," << format_number(p.rate_bits_per_mode)
           << "\n";
    }
}

void write_envelope_csv(std::ostream &os, std::string_view config_json,
                        std::span<const RatePoint> points, const EnvelopeParams *lb) {
    const std::string_view cols[] = {"L_km", "rate_bits_per_mode", "n_opt"};
    write_csv_preamble(os, config_json, cols);
    for (const auto &p : points) {
        os << format_number(p.range_km) << "," << format_number(p.rate_bits_per_mode) << ","
           << p.n_opt << "\n";
    }
    if (lb != nullptr) {
        os << "# D=" << format_number(lb->d_coeff) << ", s=" << format_number(lb->s_exp)
           << ", L0_km=" << format_number(lb->l0_km) << ", z=" << format_number(lb->z)
           << ", L0_no_z_km=" << format_number(lb->l0_no_z_km) << "\n";
    }
}

void write_resources_csv(std::ostream &os, std::string_view config_json,
                         std::span<const ResourceRow> rows) {
    const std::string_view cols[] = {"n_sources", "p_cn_naive", "p_cn_improved"};
    write_csv_preamble(os, config_json, cols);
    for (const auto &r : rows) {
        os << format_number(r.n_sources) << "," << format_number(r.p_cn_naive) << ","
           << format_number(r.p_cn_improved) << "\n";
    }
}

void write_design_csv(std::ostream &os, std::string_view config_json,
                      std::span<const DesignPoint> designs) {
    const std::string_view cols[] = {"k", "m", "b0", "b1", "n_opt", "rate", "n_sources",
                                     "parallel_channels"};
    write_csv_preamble(os, config_json, cols);
    for (const auto &d : designs) {
        os << d.k << "," << d.m << "," << d.tree[0] << ",";
        for (size_t i = 1; i < d.tree.size(); i++) {
            os << (i > 1 ? ";" : "") << d.tree[i];
        }
        os << "," << d.n << "," << format_number(d.rate) << ",";
        if (d.n_sources) {
            os << format_number(*d.n_sources);
        }
        os << "," << d.parallel_channels << "\n";
    }
}

void write_file_atomic(const std::string &path, std::string_view contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw ConfigError("output", "cannot write " + tmp.string());
        }
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) {
            throw ConfigError("output", "write failed for " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw ConfigError("output", "cannot move output into " + path);
    }
}

}  // namespace optorep
