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


#include "run_config.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hrx {

namespace {

double parse_double(const std::string &text, const std::string &what) {
    try {
        size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) {
            throw std::invalid_argument(text);
        }
        return v;
    } catch (const std::exception &) {
        throw ConfigError("invalid " + what + ": '" + text + "'");
    }
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

Grid Grid::parse(const std::string &text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ':')) {
        parts.push_back(part);
    }
    if (parts.size() != 3 && parts.size() != 4) {
        throw ConfigError("energy grid must look like min:max:points[:log], got '" + text + "'");
    }
    Grid g;
    g.min = parse_double(parts[0], "grid minimum");
    g.max = parse_double(parts[1], "grid maximum");
    double points = parse_double(parts[2], "grid point count");
    if (points != std::floor(points) || points < 1 || points > 1e6) {
        throw ConfigError("grid point count must be an integer in [1, 1e6], got '" + parts[2] + "'");
    }
    g.points = static_cast<int>(points);
    if (parts.size() == 4) {
        if (parts[3] != "log" && parts[3] != "linear") {
            throw ConfigError("grid scale must be 'linear' or 'log', got '" + parts[3] + "'");
        }
        g.log = parts[3] == "log";
    }
    g.validate();
    return g;
}

void Grid::validate() const {
    if (!std::isfinite(min) || !std::isfinite(max) || min < 0) {
        throw ConfigError("grid bounds must be finite and non-negative");
    }
    if (points < 1) {
        throw ConfigError("grid needs at least one point");
    }
    if (points == 1 ? min != max : !(min < max)) {
        throw ConfigError("grid needs min < max (or min = max with a single point)");
    }
    if (log && min <= 0) {
        throw ConfigError("a logarithmic grid needs min > 0");
    }
}

std::vector<double> Grid::values() const {
    std::vector<double> v(static_cast<size_t>(points));
    for (int i = 0; i < points; i++) {
        double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
        v[i] = log ? min * std::pow(max / min, t) : min + (max - min) * t;
    }
    v.back() = max;
    return v;
}

std::string Grid::str() const {
    return fmt(min) + ":" + fmt(max) + ":" + std::to_string(points) + (log ? ":log" : ":linear");
}

int parse_resolution(const std::string &text) {
    if (text == "inf" || text == "unbounded") {
        return 0;
    }
    double v = parse_double(text, "resolution M");
    if (v != std::floor(v) || v < 0 || v > 1e6) {
        throw ConfigError("resolution M must be a non-negative integer or 'inf', got '" + text + "'");
    }
    return static_cast<int>(v);
}

std::string resolution_str(int max_count) {
    return max_count == 0 ? "inf" : std::to_string(max_count);
}

void RunConfig::merge_json(const nlohmann::json &j) {
    if (!j.is_object()) {
        throw ConfigError("config file must hold a JSON object");
    }
    try {
        for (const auto &[key, value] : j.items()) {
            if (key == "receiver") {
                receiver = value.get<std::string>();
            } else if (key == "alpha_sq") {
                if (value.is_string()) {
                    alpha_sq = Grid::parse(value.get<std::string>());
                } else {
                    Grid g;
                    g.min = value.at("min").get<double>();
                    g.max = value.at("max").get<double>();
                    g.points = value.at("points").get<int>();
                    g.log = value.value("scale", std::string("linear")) == "log";
                    alpha_sq = g;
                }
            } else if (key == "z_sq") {
                z_sq = value.get<double>();
            } else if (key == "M") {
                max_count = value.is_string() ? parse_resolution(value.get<std::string>()) : value.get<int>();
            } else if (key == "eta") {
                eta = value.get<double>();
            } else if (key == "nu") {
                nu = value.get<double>();
            } else if (key == "xi") {
                xi = value.get<double>();
            } else if (key == "benchmark") {
                benchmark = value.get<std::string>();
            } else if (key == "trials") {
                trials = value.get<int64_t>();
            } else if (key == "seed") {
                seed = value.get<uint64_t>();
            } else if (key == "threads") {
                threads = value.get<int>();
            } else if (key == "output") {
                output = value.get<std::string>();
            } else if (key == "output_dir") {
                output_dir = value.get<std::string>();
            } else {
                throw ConfigError("unknown config key '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    }
}

void RunConfig::validate() const {
    const auto &names = receiver_names();
    if (std::find(names.begin(), names.end(), receiver) == names.end()) {
        throw ConfigError("unknown receiver '" + receiver + "'");
    }
    if (benchmark != "kennedy" && benchmark != "dpnrm") {
        throw ConfigError("benchmark must be 'kennedy' or 'dpnrm', got '" + benchmark + "'");
    }
    alpha_sq.validate();
    if (!(z_sq >= 0) || !std::isfinite(z_sq)) {
        throw ConfigError("z_sq must be finite and non-negative");
    }
    if (max_count < 0) {
        throw ConfigError("resolution M must be non-negative (0 means unbounded)");
    }
    if (!(eta > 0 && eta <= 1)) {
        throw ConfigError("eta must lie in (0, 1]");
    }
    if (!(nu >= 0) || !std::isfinite(nu)) {
        throw ConfigError("nu must be finite and non-negative");
    }
    if (!(xi > 0 && xi <= 1)) {
        throw ConfigError("xi must lie in (0, 1]");
    }
    bool needs_finite_m = benchmark == "dpnrm" || receiver == "dpnrm";
    if (needs_finite_m && max_count == 0) {
        throw ConfigError("the displacement-PNR receiver needs a finite resolution M");
    }
    if (threads < 1) {
        throw ConfigError("threads must be >= 1");
    }
}

nlohmann::json RunConfig::to_json() const {
    return {
        {"receiver", receiver},
        {"alpha_sq", alpha_sq.str()},
        {"z_sq", z_sq},
        {"M", resolution_str(max_count)},
        {"eta", eta},
        {"nu", nu},
        {"xi", xi},
        {"benchmark", benchmark},
        {"seed", seed},
    };
}

nlohmann::json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError("cannot parse config file '" + path + "': " + e.what());
    }
}

}  // namespace hrx
