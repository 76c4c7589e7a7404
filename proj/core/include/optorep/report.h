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

#ifndef OPTOREP_REPORT_H
#define OPTOREP_REPORT_H

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "optorep/envelope.h"
#include "optorep/optimizer.h"
#include "optorep/ratemodel.h"

namespace optorep {

/// Shortest round-trippable decimal for a double.
std::string format_number(double v);

/// Every CSV starts with "# config: <config_json>" and a header row.
void write_csv_preamble(std::ostream &os, std::string_view config_json,
                        std::span<const std::string_view> columns);

/// L_km,n,rate_bits_per_mode for a fixed node count.
void write_rate_csv(std::ostream &os, std::string_view config_json,
                    std::span<const RatePoint> points, int n);

/// L_km,rate_bits_per_mode,n_opt, then a "# D=..., s=..., L0_km=..." trailer when `lb` is given.
void write_envelope_csv(std::ostream &os, std::string_view config_json,
                        std::span<const RatePoint> points, const EnvelopeParams *lb = nullptr);

struct ResourceRow {
    double n_sources = 0;
    double p_cn_naive = 0;
    double p_cn_improved = 0;
};

void write_resources_csv(std::ostream &os, std::string_view config_json,
                         std::span<const ResourceRow> rows);

/// k,m,b0,b1,n_opt,rate,n_sources,parallel_channels. Deeper trees write the remaining entries
/// into b1 joined by ';'. Missing source counts are left empty.
void write_design_csv(std::ostream &os, std::string_view config_json,
                      std::span<const DesignPoint> designs);

/// Writes via a temporary file in the same directory and renames it into place.
void write_file_atomic(const std::string &path, std::string_view contents);

}  // namespace optorep

#endif
