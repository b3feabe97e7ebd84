// Copyright 2026 The hybridrx Authors
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


#ifndef _HRX_RUN_CONFIG_H
#define _HRX_RUN_CONFIG_H

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace hrx {

/// Invalid user input; the CLI exits with status 2.
class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Energy grid "min:max:points", linear or logarithmic.
struct Grid {
    double min = 0.01;
    double max = 4;
    int points = 100;
    bool log = false;

    static Grid parse(const std::string &text);
    void validate() const;
    std::vector<double> values() const;
    std::string str() const;
};

/// "inf", "unbounded" and "0" all mean an unbounded resolution (returned as 0).
int parse_resolution(const std::string &text);
std::string resolution_str(int max_count);

struct RunConfig {
    std::string receiver = "hybrid";
    Grid alpha_sq;
    double z_sq = 5;
    int max_count = 0;
    double eta = 1;
    double nu = 0;
    double xi = 1;
    std::string benchmark = "kennedy";
    int64_t trials = 100000;
    uint64_t seed = 42;
    int threads = 1;
    std::string output;
    std::string output_dir = ".";

    /// Overwrites every field present in `j`; unknown keys are rejected.
    void merge_json(const nlohmann::json &j);
    void validate() const;
    nlohmann::json to_json() const;
};

nlohmann::json read_json_file(const std::string &path);

inline const std::vector<std::string> &receiver_names() {
    static const std::vector<std::string> names{
        "hybrid", "hybrid-hd", "kennedy", "homodyne-like", "dpnrm", "helstrom", "sql"};
    return names;
}

}  // namespace hrx

#endif
