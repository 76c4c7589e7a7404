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

#ifndef OPTOREP_ERRORS_H
#define OPTOREP_ERRORS_H

#include <stdexcept>
#include <string>

namespace optorep {

/// Bad user input: a parameter, configuration key, or precondition. Maps to CLI exit code 2.
class ConfigError : public std::invalid_argument {
   public:
    ConfigError(std::string key, const std::string &message)
        : std::invalid_argument(key + ": " + message), key_(std::move(key)) {
    }
    const std::string &key() const noexcept {
        return key_;
    }

   private:
    std::string key_;
};

/// A well-formed request that has no answer under the model (empty search space, no crossover,
/// unreachable target, ...). Maps to CLI exit code 3.
class InfeasibleError : public std::runtime_error {
   public:
    InfeasibleError(std::string kind, const std::string &message)
        : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {
    }
    const std::string &kind() const noexcept {
        return kind_;
    }

   private:
    std::string kind_;
};

}  // namespace optorep

#endif
