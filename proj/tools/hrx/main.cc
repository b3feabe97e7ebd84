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


#include <algorithm>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "commands.h"
#include "library.h"
#include "run_config.h"

namespace {

using hrx::RunConfig;

/// Flags of one subcommand. Values only override the config file when given.
struct Flags {
    std::string config_path;
    std::string receiver;
    std::string alpha_sq;
    std::string scale;
    double z_sq = 0;
    std::string resolution;
    double eta = 0;
    double nu = 0;
    double xi = 0;
    std::string benchmark;
    int64_t trials = 0;
    uint64_t seed = 0;
    int threads = 0;
    std::string output;
    std::string output_dir;

    std::vector<std::pair<CLI::Option *, std::function<void(RunConfig &)>>> setters;

    template <typename T>
    void add(CLI::App *app, const std::string &name, T &target, const std::string &help,
             std::function<void(RunConfig &)> apply) {
        setters.emplace_back(app->add_option(name, target, help), std::move(apply));
    }

    void add_config(CLI::App *app) {
        app->add_option("--config", config_path, "JSON file with run parameters; flags override it");
    }

    void add_detector(CLI::App *app) {
        add(app, "-M,--resolution", resolution, "PNR resolution M, or 'inf'",
            [this](RunConfig &c) { c.max_count = hrx::parse_resolution(resolution); });
        add(app, "--eta", eta, "quantum efficiency", [this](RunConfig &c) { c.eta = eta; });
        add(app, "--nu", nu, "dark counts per pulse", [this](RunConfig &c) { c.nu = nu; });
        add(app, "--xi", xi, "displacement visibility", [this](RunConfig &c) { c.xi = xi; });
    }

    void add_lo(CLI::App *app) {
        add(app, "--z-sq", z_sq, "local oscillator intensity z^2", [this](RunConfig &c) { c.z_sq = z_sq; });
    }

    void add_output(CLI::App *app) {
        add(app, "-o,--output", output, "output file (default stdout)", [this](RunConfig &c) { c.output = output; });
    }

    void add_seed(CLI::App *app) {
        add(app, "--seed", seed, "random seed", [this](RunConfig &c) { c.seed = seed; });
    }

    RunConfig resolve() const {
        RunConfig c;
        if (!config_path.empty()) {
            c.merge_json(hrx::read_json_file(config_path));
        }
        for (const auto &[opt, apply] : setters) {
            if (opt->count() > 0) {
                apply(c);
            }
        }
        return c;
    }
};

int classify(const hrx::LibraryError &e) {
    switch (e.status) {
        case HRX_ERR_INVALID_ARGUMENT:
        case HRX_ERR_DOMAIN:
        case HRX_ERR_OUT_OF_RANGE:
            return hrx::kExitConfig;
        default:
            return hrx::kExitFailure;
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Error probabilities of hybrid homodyne-like / displacement-PNR receivers for BPSK coherent states"};
    app.set_version_flag("--version", std::string("hybridrx ") + hrx_version());
    app.require_subcommand(1);

    Flags sweep_flags;
    auto *sweep = app.add_subcommand("sweep", "error probability and ratio against an energy grid, as CSV");
    sweep_flags.add_config(sweep);
    sweep_flags.add(sweep, "--receiver", sweep_flags.receiver,
                    "hybrid, hybrid-hd, kennedy, homodyne-like, dpnrm, helstrom or sql",
                    [&](RunConfig &c) { c.receiver = sweep_flags.receiver; });
    sweep_flags.add(sweep, "--alpha-sq", sweep_flags.alpha_sq, "energy grid min:max:points[:log]", [&](RunConfig &c) {
        bool log = c.alpha_sq.log;
        c.alpha_sq = hrx::Grid::parse(sweep_flags.alpha_sq);
        if (std::count(sweep_flags.alpha_sq.begin(), sweep_flags.alpha_sq.end(), ':') < 3) {
            c.alpha_sq.log = log;
        }
    });
    sweep_flags.add(sweep, "--benchmark", sweep_flags.benchmark, "kennedy or dpnrm",
                    [&](RunConfig &c) { c.benchmark = sweep_flags.benchmark; });
    sweep_flags.add_lo(sweep);
    sweep_flags.add_detector(sweep);
    sweep_flags.add_seed(sweep);
    sweep_flags.add_output(sweep);
    // Applied last so that it also affects a grid coming from the config file.
    sweep_flags.add(sweep, "--scale", sweep_flags.scale, "grid spacing: linear or log", [&](RunConfig &c) {
        if (sweep_flags.scale != "linear" && sweep_flags.scale != "log") {
            throw hrx::ConfigError("--scale must be 'linear' or 'log'");
        }
        c.alpha_sq.log = sweep_flags.scale == "log";
    });

    Flags figure_flags;
    std::string figure_name;
    auto *figure = app.add_subcommand("figure", "regenerate the curve data of a figure (CSV files plus a manifest)");
    figure->add_option("name", figure_name, "fig2, fig3, fig4, fig5 or fig6")->required();
    figure_flags.add_config(figure);
    figure_flags.add(figure, "-d,--output-dir", figure_flags.output_dir, "directory for the CSV files",
                     [&](RunConfig &c) { c.output_dir = figure_flags.output_dir; });

    auto *constants = app.add_subcommand("constants", "print lambda, N_th and R_inf of the infinite-LO receiver");

    Flags validate_flags;
    auto *validate = app.add_subcommand("validate", "Monte Carlo check of every analytic error probability");
    validate_flags.add_config(validate);
    validate_flags.add(validate, "--trials", validate_flags.trials, "trials per configuration (>= 10^4)",
                       [&](RunConfig &c) { c.trials = validate_flags.trials; });
    validate_flags.add(validate, "--threads", validate_flags.threads, "worker threads",
                       [&](RunConfig &c) { c.threads = validate_flags.threads; });
    validate_flags.add_lo(validate);
    validate_flags.add_seed(validate);
    validate_flags.add_output(validate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? hrx::kExitOk : hrx::kExitConfig;
    }

    try {
        if (*sweep) {
            return hrx::cmd_sweep(sweep_flags.resolve());
        }
        if (*figure) {
            return hrx::cmd_figure(figure_name, figure_flags.resolve());
        }
        if (*constants) {
            return hrx::cmd_constants(std::cout);
        }
        if (*validate) {
            return hrx::cmd_validate(validate_flags.resolve());
        }
    } catch (const hrx::ConfigError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return hrx::kExitConfig;
    } catch (const hrx::LibraryError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return classify(e);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return hrx::kExitFailure;
    }
    return hrx::kExitFailure;
}
