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

#include "commands.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "optorep/errors.h"

using namespace optorep;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run invoke(const std::vector<std::string> &args) {
    std::ostringstream out;
    std::ostringstream err;
    Run r;
    r.code = cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::vector<std::string> data_rows(const std::string &text) {
    std::vector<std::string> rows;
    std::istringstream in(text);
    bool header = false;
    for (std::string line; std::getline(in, line);) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!header) {
            header = true;
            continue;
        }
        rows.push_back(line);
    }
    return rows;
}

std::string find_line(const std::string &text, const std::string &prefix) {
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        if (line.rfind(prefix, 0) == 0) {
            return line;
        }
    }
    return {};
}

double field_after(const std::string &line, const std::string &key) {
    auto pos = line.find(key);
    return pos == std::string::npos ? NAN : std::stod(line.substr(pos + key.size()));
}

}  // namespace

TEST(cli, grid_syntax) {
    auto g = cli::parse_grid("1:5:2", "L");
    EXPECT_EQ(g, (std::vector<double>{1, 3, 5}));
    EXPECT_EQ(cli::parse_grid("10,20.5", "L"), (std::vector<double>{10, 20.5}));
    EXPECT_EQ(cli::parse_grid("7", "L"), (std::vector<double>{7}));
    EXPECT_EQ(cli::parse_grid("1:600:1", "L").size(), 600u);
    EXPECT_THROW(cli::parse_grid("5,3", "L"), ConfigError);
    EXPECT_THROW(cli::parse_grid("1:x:2", "L"), ConfigError);
    EXPECT_THROW(cli::parse_grid("-1,2", "L"), ConfigError);
    EXPECT_EQ(cli::parse_int_list("7,8,9", "k"), (std::vector<int>{7, 8, 9}));
    EXPECT_THROW(cli::parse_int_list("7,a", "k"), ConfigError);
}

TEST(cli, rate_sweep) {
    auto r = invoke({"rate", "--m", "4", "--b", "7,3", "--n", "56", "--L", "1:600:1"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("# config: ", 0), 0u);
    auto rows = data_rows(r.out);
    ASSERT_EQ(rows.size(), 600u);
    double last = INFINITY;
    for (const auto &row : rows) {
        const double rate = std::stod(row.substr(row.rfind(',') + 1));
        EXPECT_LT(rate, last) << row;
        last = rate;
    }
}

TEST(cli, envelope_trailer_values) {
    auto r = invoke({"envelope", "--m", "4", "--b", "7,3"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto trailer = find_line(r.out, "# D=");
    ASSERT_FALSE(trailer.empty());
    EXPECT_NEAR(field_after(trailer, "D="), 0.11, 0.02);
    EXPECT_NEAR(field_after(trailer, "s="), 0.37, 0.02);
    EXPECT_NEAR(field_after(trailer, "L0_km="), 1.49, 0.15);
    auto cross = find_line(r.out, "# crossover_km=");
    EXPECT_NEAR(field_after(cross, "crossover_km="), 87, 5);
}

TEST(cli, constants_report) {
    auto r = invoke({"constants", "--m", "4", "--k", "8"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("0.9990580439"), std::string::npos) << r.out;
}

TEST(cli, verify_passes) {
    auto r = invoke({"verify"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
    EXPECT_NE(r.err.find("seed: "), std::string::npos);
}

TEST(cli, error_exit_codes) {
    auto bad_flag = invoke({"rate", "--bogus", "1"});
    EXPECT_EQ(bad_flag.code, 2);
    EXPECT_EQ(bad_flag.err.rfind("error: config:", 0), 0u);
    auto bad_grid = invoke({"rate", "--L", "5,1"});
    EXPECT_EQ(bad_grid.code, 2);
    EXPECT_NE(bad_grid.err.find("L"), std::string::npos);
    auto bad_device = invoke({"rate", "--alpha", "-1"});
    EXPECT_EQ(bad_device.code, 2);
    auto empty = invoke({"optimize", "--k", "3"});
    EXPECT_EQ(empty.code, 3);
    EXPECT_NE(empty.err.find("empty-feasible-set"), std::string::npos) << empty.err;
    EXPECT_EQ(invoke({}).code, 2);
    // Errors are a single line.
    EXPECT_EQ(std::count(empty.err.begin(), empty.err.end(), '\n'), 1);
}

TEST(cli, config_file_and_flag_precedence) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "optorep_cli_cfg";
    fs::create_directories(dir);
    const fs::path cfg = dir / "device.json";
    std::ofstream(cfg) << R"({"alpha": 0.05})";
    auto from_file = invoke({"rate", "--config", cfg.string(), "--L", "100", "--n", "56"});
    auto flag_wins =
        invoke({"rate", "--config", cfg.string(), "--alpha", "0.046", "--L", "100", "--n", "56"});
    auto builtin = invoke({"rate", "--L", "100", "--n", "56"});
    ASSERT_EQ(from_file.code, 0) << from_file.err;
    EXPECT_NE(data_rows(from_file.out), data_rows(builtin.out));
    EXPECT_EQ(data_rows(flag_wins.out), data_rows(builtin.out));
    std::ofstream(cfg) << R"({"alfa": 0.05})";
    auto typo = invoke({"rate", "--config", cfg.string()});
    EXPECT_EQ(typo.code, 2);
    EXPECT_NE(typo.err.find("alfa"), std::string::npos);
    fs::remove_all(dir);
}

TEST(cli, reruns_are_byte_identical) {
    std::vector<std::string> args{"resources", "--from", "1e5", "--to", "1e7", "--per-decade", "2",
                                  "--method", "mc", "--trials", "500", "--seed", "42"};
    auto a = invoke(args);
    auto b = invoke(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.err.find("seed: 42"), std::string::npos);
    auto rows = data_rows(a.out);
    EXPECT_EQ(rows.size(), 5u);
}

TEST(cli, output_file_is_written_whole) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "optorep_cli_out";
    fs::create_directories(dir);
    const fs::path target = dir / "rate.csv";
    auto r = invoke({"rate", "--L", "10:50:10", "-o", target.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(target);
    std::string text((std::istreambuf_iterator<char>(in)), {});
    EXPECT_EQ(data_rows(text).size(), 5u);
    EXPECT_FALSE(fs::exists(dir / "rate.csv.tmp"));
    fs::remove_all(dir);
}

TEST(cli, optimize_reference_row) {
    auto r = invoke({"optimize", "--k", "7", "--L", "300"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto rows = data_rows(r.out);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].rfind("7,4,4,2,", 0), 0u) << rows[0];
    EXPECT_EQ(rows[0].substr(rows[0].rfind(',') + 1), "8");
}
