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

#include "hybridrx/optimizer.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hybridrx {

namespace {

// tau_opt above this counts as "the displacement stage is in use".
constexpr double kNonzeroTau = 1e-4;

OptimizationResult finish(const UnitMinimum &m, double p_benchmark, Benchmark benchmark, int coarse_points) {
    OptimizationResult r;
    r.tau_opt = m.x;
    r.p_err_opt = m.value;
    r.p_benchmark = p_benchmark;
    r.ratio_vs_benchmark = m.value / p_benchmark;
    r.benchmark = benchmark;
    r.coarse_points = coarse_points;
    r.tolerance = kTauTolerance;
    r.evaluations = m.evaluations;
    r.bracket_lo = m.bracket_lo;
    r.bracket_hi = m.bracket_hi;
    return r;
}

}  // namespace

std::string_view benchmark_name(Benchmark benchmark) {
    return benchmark == Benchmark::Kennedy ? "kennedy" : "dpnrm";
}

double benchmark_error(double alpha, const DetectorModel &detector, Benchmark benchmark) {
    if (benchmark == Benchmark::Kennedy) {
        return kennedy_error(alpha, detector.efficiency);
    }
    return dpnrm_error(alpha, detector).p_err;
}

UnitMinimum minimize_unit_interval(const std::function<double(double)> &f, int coarse_points, double tolerance) {
    if (coarse_points < 2) {
        throw std::invalid_argument("the coarse grid needs at least two points");
    }
    UnitMinimum best{0, f(0), 1, 0, 0};
    auto consider = [&](double x, double v) {
        best.evaluations++;
        if (v < best.value) {
            best.x = x;
            best.value = v;
        }
    };

    int best_index = 0;
    double step = 1.0 / (coarse_points - 1);
    for (int i = 1; i < coarse_points; i++) {
        double x = i == coarse_points - 1 ? 1.0 : i * step;
        double v = f(x);
        double before = best.value;
        consider(x, v);
        if (best.value < before) {
            best_index = i;
        }
    }

    double a = std::max(0, best_index - 1) * step;
    double b = std::min(1.0, (best_index + 1) * step);
    best.bracket_lo = a;
    best.bracket_hi = b;

    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    consider(x1, f1);
    consider(x2, f2);
    while (b - a > tolerance) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
            consider(x1, f1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
            consider(x2, f2);
        }
    }
    return best;
}

OptimizationResult optimize_tau(double alpha, double lo, const DetectorModel &detector, Benchmark benchmark) {
    detector.validate();
    SignalConfig config{alpha, lo, 0.5, 0.5, 0};
    config.validate();
    auto objective = [&](double tau) {
        SignalConfig c = config;
        c.tau = tau;
        return hybrid_error(c, detector).p_err;
    };
    auto m = minimize_unit_interval(objective);
    auto r = finish(m, benchmark_error(alpha, detector, benchmark), benchmark, kCoarseGridPoints);
    config.tau = r.tau_opt;
    auto at_opt = hybrid_error(config, detector);
    r.n_th = at_opt.n_th_used;
    r.extension = at_opt.extension;
    return r;
}

OptimizationResult optimize_tau_hd(double alpha) {
    auto m = minimize_unit_interval([alpha](double tau) { return hybrid_error_hd(alpha, tau); });
    return finish(m, kennedy_error(alpha), Benchmark::Kennedy, kCoarseGridPoints);
}

double lambda_hd_residual(double lambda) {
    return std::sqrt(2 / (std::numbers::pi * lambda)) - 4 * std::exp(2 * lambda) * std::erfc(std::sqrt(2 * lambda));
}

double solve_lambda_hd() {
    double a = 1e-4;
    double b = 1.0;
    double fa = lambda_hd_residual(a);
    double fb = lambda_hd_residual(b);
    if (!(fa > 0 && fb < 0)) {
        throw std::runtime_error("lambda root equation is not bracketed by (1e-4, 1)");
    }
    while (b - a > 1e-14) {
        double mid = 0.5 * (a + b);
        double fm = lambda_hd_residual(mid);
        if (fm == 0) {
            return mid;
        }
        if (fm > 0) {
            a = mid;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

double r_infinity_hd() {
    double lambda = solve_lambda_hd();
    return std::exp(4 * lambda) * std::erfc(std::sqrt(2 * lambda));
}

AnsatzFit ansatz_fit(double lo, const DetectorModel &detector, double alpha_sq_lo, double alpha_sq_hi) {
    if (!(alpha_sq_lo > 0 && alpha_sq_hi > alpha_sq_lo)) {
        throw std::invalid_argument("ansatz fit range must satisfy 0 < lo < hi");
    }
    auto tau_at = [&](double alpha_sq) {
        return optimize_tau(std::sqrt(alpha_sq), lo, detector, Benchmark::Kennedy).tau_opt;
    };

    AnsatzFit fit;
    fit.fit_lo = alpha_sq_lo;
    fit.fit_hi = alpha_sq_hi;

    double tau_hi = tau_at(alpha_sq_hi);
    double tau_half = tau_at(alpha_sq_hi / 2);
    if (tau_hi <= kNonzeroTau || tau_hi >= 1 || tau_half <= kNonzeroTau || tau_half >= 1) {
        throw FitError("optimal transmissivity does not approach 1 as 1 - lambda / alpha^2 in the fit range");
    }
    fit.lambda_z = alpha_sq_hi * (1 - tau_hi);
    fit.lambda_uncertainty = std::abs(fit.lambda_z - alpha_sq_hi / 2 * (1 - tau_half));

    constexpr int kFitPoints = 9;
    for (int i = 0; i < kFitPoints; i++) {
        double alpha_sq = alpha_sq_lo + (alpha_sq_hi - alpha_sq_lo) * i / (kFitPoints - 1);
        double predicted = 1 - fit.lambda_z / alpha_sq;
        fit.residual = std::max(fit.residual, std::abs(tau_at(alpha_sq) - predicted));
    }

    double a = 1e-3;
    double b = alpha_sq_lo;
    if (tau_at(a) > kNonzeroTau || tau_at(b) <= kNonzeroTau) {
        throw FitError("threshold energy is not bracketed by the fit range");
    }
    while (b - a > 1e-4) {
        double mid = 0.5 * (a + b);
        if (tau_at(mid) > kNonzeroTau) {
            b = mid;
        } else {
            a = mid;
        }
    }
    fit.n_th_energy = b;
    return fit;
}

SweepTable ratio_curve(
    std::span<const double> alpha_sq_grid, double lo, const DetectorModel &detector, Benchmark benchmark) {
    if (alpha_sq_grid.empty()) {
        throw std::invalid_argument("energy grid is empty");
    }
    SweepTable table;
    table.rows.reserve(alpha_sq_grid.size());
    double previous = -1;
    for (double alpha_sq : alpha_sq_grid) {
        if (!(alpha_sq >= 0) || alpha_sq <= previous) {
            throw std::invalid_argument("energy grid must be non-negative and strictly increasing");
        }
        previous = alpha_sq;
        auto r = optimize_tau(std::sqrt(alpha_sq), lo, detector, benchmark);
        table.rows.push_back({alpha_sq, r.tau_opt, r.p_err_opt, r.p_benchmark, r.ratio_vs_benchmark, r.n_th});
    }
    return table;
}

}  // namespace hybridrx
