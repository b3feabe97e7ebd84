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


#include "commands.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>

#include "library.h"

namespace hrx {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

Detector make_detector(const RunConfig &c) {
    hrx_detector *d = nullptr;
    check(hrx_detector_create(c.max_count, c.eta, c.nu, c.xi, &d));
    return Detector(d);
}

hrx_benchmark benchmark_of(const RunConfig &c) {
    return c.benchmark == "dpnrm" ? HRX_BENCHMARK_DPNRM : HRX_BENCHMARK_KENNEDY;
}

double benchmark_error(double alpha, const RunConfig &c, const hrx_detector *det) {
    if (c.benchmark == "dpnrm") {
        hrx_receiver_result r;
        check(hrx_dpnrm_error(alpha, det, &r));
        return r.p_err;
    }
    double p;
    check(hrx_kennedy_error(alpha, c.eta, &p));
    return p;
}

/// (tau, p_err) of a fixed, non-optimized receiver.
std::pair<double, double> fixed_receiver(const std::string &name, double alpha, double lo, const hrx_detector *det,
                                         const RunConfig &c) {
    double p = 0;
    hrx_receiver_result r;
    if (name == "kennedy") {
        check(hrx_kennedy_error(alpha, c.eta, &p));
        return {1, p};
    }
    if (name == "dpnrm") {
        check(hrx_dpnrm_error(alpha, det, &r));
        return {1, r.p_err};
    }
    if (name == "homodyne-like") {
        check(hrx_homodyne_like_error(alpha, lo, det, &r));
        return {0, r.p_err};
    }
    if (name == "helstrom") {
        check(hrx_helstrom_bound(alpha, 0.5, 0.5, &p));
        return {kNaN, p};
    }
    if (name == "sql") {
        check(hrx_homodyne_sql(alpha, &p));
        return {0, p};
    }
    hrx_optimization o;
    check(hrx_optimize_tau_hd(alpha, &o));
    return {o.tau_opt, o.p_err_opt};
}

void write_metadata(std::ostream &out, const RunConfig &c) {
    out << "# tool: hybridrx " << hrx_version() << "\n";
    out << "# receiver: " << c.receiver << "\n";
    out << "# benchmark: " << c.benchmark << "\n";
    out << "# alpha_sq: " << c.alpha_sq.str() << "\n";
    out << "# z_sq: " << fmt(c.z_sq) << "\n";
    out << "# M: " << resolution_str(c.max_count) << "\n";
    out << "# eta: " << fmt(c.eta) << "\n";
    out << "# nu: " << fmt(c.nu) << "\n";
    out << "# xi: " << fmt(c.xi) << "\n";
    out << "# seed: " << c.seed << "\n";
}

/// Writes to `path`, or to stdout when it is empty.
void with_output(const std::string &path, const std::function<void(std::ostream &)> &body) {
    if (path.empty()) {
        body(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    body(out);
    if (!out) {
        throw std::runtime_error("failed writing '" + path + "'");
    }
}

struct Curve {
    std::string label;
    RunConfig config;
};

struct FigureSpec {
    std::string description;
    std::vector<Curve> curves;
    /// Extra tables that are not energy sweeps, written by the figure itself.
    std::function<nlohmann::json(const std::string &dir)> extra;
};

Curve curve(std::string label, std::string receiver, Grid grid, double z_sq, int m, double eta = 1, double nu = 0,
            double xi = 1, std::string benchmark = "kennedy") {
    RunConfig c;
    c.receiver = std::move(receiver);
    c.alpha_sq = grid;
    c.z_sq = z_sq;
    c.max_count = m;
    c.eta = eta;
    c.nu = nu;
    c.xi = xi;
    c.benchmark = std::move(benchmark);
    return {std::move(label), c};
}

std::string tag(double v) {
    std::string s = fmt(v);
    for (char &ch : s) {
        if (ch == '.') {
            ch = 'p';
        }
    }
    return s;
}

/// Saturation ratio of the hybrid receiver against Kennedy as a function of eta,
/// evaluated at a large energy where the ratio has settled.
nlohmann::json saturation_vs_efficiency(const std::string &dir) {
    constexpr double kSaturationEnergy = 30;
    constexpr double kLoSq = 5;
    Grid etas{0.05, 1, 20, false};
    nlohmann::json files = nlohmann::json::array();
    for (int m : {1, 2, 3, 0}) {
        std::string file = "fig4_saturation_M" + resolution_str(m) + ".csv";
        with_output((std::filesystem::path(dir) / file).string(), [&](std::ostream &out) {
            out << "# tool: hybridrx " << hrx_version() << "\n";
            out << "# receiver: hybrid\n# benchmark: kennedy\n";
            out << "# alpha_sq: " << fmt(kSaturationEnergy) << "\n# z_sq: " << fmt(kLoSq) << "\n";
            out << "# M: " << resolution_str(m) << "\n# eta: " << etas.str() << "\n# nu: 0\n# xi: 1\n";
            out << "eta,alpha_sq,tau_opt,p_hyb,p_benchmark,ratio\n";
            for (double eta : etas.values()) {
                hrx_detector *raw = nullptr;
                check(hrx_detector_create(m, eta, 0, 1, &raw));
                Detector det(raw);
                hrx_optimization o;
                check(hrx_optimize_tau(std::sqrt(kSaturationEnergy), std::sqrt(kLoSq), det.get(),
                                       HRX_BENCHMARK_KENNEDY, &o));
                out << fmt(eta) << "," << fmt(kSaturationEnergy) << "," << fmt(o.tau_opt) << "," << fmt(o.p_err_opt)
                    << "," << fmt(o.p_benchmark) << "," << fmt(o.ratio) << "\n";
            }
        });
        files.push_back({{"file", file},
                         {"label", "saturation ratio vs eta, M=" + resolution_str(m)},
                         {"parameters",
                          {{"alpha_sq", kSaturationEnergy}, {"z_sq", kLoSq}, {"M", resolution_str(m)},
                           {"eta", etas.str()}, {"nu", 0}, {"xi", 1}, {"benchmark", "kennedy"}}}});
    }
    return files;
}

FigureSpec figure_spec(const std::string &name) {
    const Grid wide{0.01, 10, 80, true};
    const Grid noisy{0.1, 20, 120, true};
    FigureSpec spec;
    if (name == "fig2") {
        spec.description = "ratio against Kennedy for several LO intensities; error probabilities at z^2 = 5";
        for (double z_sq : {1.0, 3.0, 5.0, 10.0}) {
            spec.curves.push_back(curve("ratio_z" + tag(z_sq), "hybrid", wide, z_sq, 0));
        }
        for (const char *r : {"hybrid", "kennedy", "homodyne-like", "helstrom"}) {
            spec.curves.push_back(curve(std::string("error_") + r, r, wide, 5, 0));
        }
    } else if (name == "fig3") {
        spec.description = "ratio against Kennedy for several PNR resolutions at z^2 = 3";
        for (int m : {1, 2, 3, 5, 10, 0}) {
            spec.curves.push_back(curve("ratio_M" + resolution_str(m), "hybrid", wide, 3, m));
        }
    } else if (name == "fig4") {
        spec.description = "PNR(3) hybrid and Kennedy error probabilities for several efficiencies at z^2 = 5; "
                           "saturation ratio against efficiency";
        for (double eta : {1.0, 0.8, 0.6, 0.4}) {
            spec.curves.push_back(curve("error_hybrid_eta" + tag(eta), "hybrid", wide, 5, 3, eta));
            spec.curves.push_back(curve("error_kennedy_eta" + tag(eta), "kennedy", wide, 5, 3, eta));
        }
        spec.extra = saturation_vs_efficiency;
    } else if (name == "fig5") {
        spec.description = "hybrid and displacement-PNR error probabilities, their ratio and tau_opt "
                           "with dark counts nu = 1e-3 at z^2 = 5";
        for (int m : {1, 2, 3, 5}) {
            spec.curves.push_back(
                curve("M" + resolution_str(m), "hybrid", noisy, 5, m, 1, 1e-3, 1, "dpnrm"));
        }
    } else if (name == "fig6") {
        spec.description = "hybrid and displacement-PNR error probabilities and tau_opt with visibility "
                           "xi = 0.998 at z^2 = 5";
        for (int m : {1, 2, 3, 5}) {
            spec.curves.push_back(
                curve("M" + resolution_str(m), "hybrid", noisy, 5, m, 1, 0, 0.998, "dpnrm"));
        }
    } else {
        throw ConfigError("unknown figure '" + name + "' (expected fig2..fig6)");
    }
    return spec;
}

}  // namespace

const std::vector<std::string> &figure_names() {
    static const std::vector<std::string> names{"fig2", "fig3", "fig4", "fig5", "fig6"};
    return names;
}

std::vector<hrx_sweep_row> compute_sweep(const RunConfig &c) {
    c.validate();
    Detector det = make_detector(c);
    std::vector<double> grid = c.alpha_sq.values();
    double lo = std::sqrt(c.z_sq);
    std::vector<hrx_sweep_row> rows;

    if (c.receiver == "hybrid") {
        hrx_sweep_table *raw = nullptr;
        check(hrx_ratio_curve(grid.data(), grid.size(), lo, det.get(), benchmark_of(c), &raw));
        SweepTable table(raw);
        rows.resize(hrx_sweep_table_size(table.get()));
        for (size_t i = 0; i < rows.size(); i++) {
            check(hrx_sweep_table_row(table.get(), i, &rows[i]));
        }
        return rows;
    }

    for (double alpha_sq : grid) {
        double alpha = std::sqrt(alpha_sq);
        auto [tau, p] = fixed_receiver(c.receiver, alpha, lo, det.get(), c);
        double bench = benchmark_error(alpha, c, det.get());
        hrx_sweep_row row{};
        row.alpha_sq = alpha_sq;
        row.tau_opt = tau;
        row.p_hyb = p;
        row.p_benchmark = bench;
        row.ratio = bench > 0 ? p / bench : kNaN;
        rows.push_back(row);
    }
    return rows;
}

void write_sweep_csv(std::ostream &out, const RunConfig &config, const std::vector<hrx_sweep_row> &rows) {
    write_metadata(out, config);
    out << "alpha_sq,tau_opt,p_hyb,p_benchmark,ratio\n";
    for (const auto &r : rows) {
        out << fmt(r.alpha_sq) << "," << fmt(r.tau_opt) << "," << fmt(r.p_hyb) << "," << fmt(r.p_benchmark) << ","
            << fmt(r.ratio) << "\n";
    }
}

int cmd_sweep(const RunConfig &config) {
    auto rows = compute_sweep(config);
    with_output(config.output, [&](std::ostream &out) { write_sweep_csv(out, config, rows); });
    return kExitOk;
}

int cmd_figure(const std::string &name, const RunConfig &config) {
    FigureSpec spec = figure_spec(name);
    std::filesystem::create_directories(config.output_dir);

    nlohmann::json manifest;
    manifest["figure"] = name;
    manifest["tool"] = std::string("hybridrx ") + hrx_version();
    manifest["description"] = spec.description;
    manifest["curves"] = nlohmann::json::array();
    for (const Curve &c : spec.curves) {
        std::string file = name + "_" + c.label + ".csv";
        auto rows = compute_sweep(c.config);
        with_output((std::filesystem::path(config.output_dir) / file).string(),
                    [&](std::ostream &out) { write_sweep_csv(out, c.config, rows); });
        manifest["curves"].push_back({{"file", file}, {"label", c.label}, {"parameters", c.config.to_json()}});
        std::cerr << "wrote " << file << "\n";
    }
    if (spec.extra) {
        for (auto &entry : spec.extra(config.output_dir)) {
            std::cerr << "wrote " << entry["file"].get<std::string>() << "\n";
            manifest["curves"].push_back(entry);
        }
    }
    std::string manifest_file = name + "_manifest.json";
    with_output((std::filesystem::path(config.output_dir) / manifest_file).string(),
                [&](std::ostream &out) { out << manifest.dump(2) << "\n"; });
    std::cerr << "wrote " << manifest_file << "\n";
    return kExitOk;
}

int cmd_constants(std::ostream &out) {
    double lambda;
    double r_inf;
    check(hrx_solve_lambda_hd(&lambda));
    check(hrx_r_infinity_hd(&r_inf));
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", lambda);
    out << "lambda: " << buf << "\n";
    // The threshold energy of the infinite-LO receiver is lambda itself.
    out << "N_th(HD): " << buf << "\n";
    std::snprintf(buf, sizeof(buf), "%.6g", r_inf);
    out << "R_inf(HD): " << buf << "\n";
    return kExitOk;
}

int cmd_validate(const RunConfig &config) {
    if (config.trials < kMinValidateTrials) {
        throw ConfigError("validate needs --trials >= " + std::to_string(kMinValidateTrials));
    }
    if (config.threads < 1) {
        throw ConfigError("threads must be >= 1");
    }
    size_t count = 0;
    check(hrx_default_validation_matrix(config.z_sq, nullptr, 0, &count));
    std::vector<hrx_validation_case> cases(count);
    check(hrx_default_validation_matrix(config.z_sq, cases.data(), cases.size(), &count));

    hrx_validation_report *raw = nullptr;
    check(hrx_run_validation(cases.data(), cases.size(), config.trials, config.seed, config.threads, &raw));
    ValidationReport report(raw);
    int32_t failures = 0;
    int32_t allowed = 0;
    int32_t passed = 0;
    check(hrx_validation_report_summary(report.get(), &failures, &allowed, &passed));

    static const char *kinds[] = {"hybrid", "homodyne-like", "dpnrm"};
    with_output(config.output, [&](std::ostream &out) {
        out << "# tool: hybridrx " << hrx_version() << "\n";
        out << "# trials: " << config.trials << "\n# seed: " << config.seed << "\n";
        out << "# z_sq: " << fmt(config.z_sq) << "\n";
        out << "# failures: " << failures << "\n# allowed_outliers: " << allowed << "\n";
        out << "# result: " << (passed ? "pass" : "fail") << "\n";
        out << "receiver,alpha_sq,z_sq,M,eta,nu,xi,tau,analytic,p_hat,std_err,sigma,errors,pass\n";
        for (size_t i = 0; i < hrx_validation_report_size(report.get()); i++) {
            hrx_validation_row r;
            check(hrx_validation_report_row(report.get(), i, &r));
            const hrx_validation_case &c = r.config;
            out << kinds[c.receiver] << "," << fmt(c.alpha_sq) << "," << fmt(c.lo_sq) << ","
                << resolution_str(c.max_count) << "," << fmt(c.efficiency) << "," << fmt(c.dark_rate) << ","
                << fmt(c.visibility) << "," << fmt(r.tau) << "," << fmt(r.analytic) << "," << fmt(r.estimate.p_err_hat)
                << "," << fmt(r.estimate.std_err) << "," << fmt(r.sigma) << "," << r.estimate.errors << ","
                << (r.pass ? "pass" : "FAIL") << "\n";
        }
    });
    std::cerr << cases.size() << " cases, " << failures << " outside 3 sigma (" << allowed << " allowed): "
              << (passed ? "pass" : "fail") << "\n";
    return passed ? kExitOk : kExitValidation;
}

}  // namespace hrx
