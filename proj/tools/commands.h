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

#ifndef OPTOREP_TOOLS_COMMANDS_H
#define OPTOREP_TOOLS_COMMANDS_H

#include <iosfwd>
#include <string>
#include <vector>

namespace optorep::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_config = 2,
    exit_infeasible = 3,
    exit_verification = 4,
};

/// Parses "lo:hi:step", a comma list, or a single value. Throws ConfigError(key).
std::vector<double> parse_grid(const std::string &text, const std::string &key);

/// Comma list of integers. Throws ConfigError(key).
std::vector<int> parse_int_list(const std::string &text, const std::string &key);

/// Entry point shared by the binary and the tests. args excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace optorep::cli

#endif
