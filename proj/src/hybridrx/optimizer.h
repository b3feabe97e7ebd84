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

#ifndef _HYBRIDRX_OPTIMIZER_H
#define _HYBRIDRX_OPTIMIZER_H

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "hybridrx/receivers.h"

namespace hybridrx {

enum class Benchmark { Kennedy, Dpnrm };

std::string_view benchmark_name(Benchmark benchmark);

/// Error probability of the benchmark receiver for the given detector.
double benchmark_error(double alpha, const DetectorModel &detector, Benchmark benchmark);

/// Coarse grid spacing and refinement tolerance used by minimize_unit_interval.
inline constexpr int kCoarseGridPoints = 1001;
inline constexpr double kTauTolerance = 1e-5;

struct UnitMinimum {
    double x;
    double value;
    int evaluations;
    double bracket_lo;
    double bracket_hi;
};

/// Global minimum of f on [0, 1]: uniform coarse scan followed by golden-section
/// refinement inside the bracket around the best grid point. The returned point
/// is the best one ever evaluated, so exact endpoints survive refinement.
UnitMinimum minimize_unit_interval(
    const std::function<double(double)> &f, int coarse_points = kCoarseGridPoints, double tolerance = kTauTolerance);

struct OptimizationResult {
    double tau_opt = 0;
    double p_err_opt = 0;
    double p_benchmark = 0;
    double ratio_vs_benchmark = 0;
    Benchmark benchmark = Benchmark::Kennedy;
    std::optional<int64_t> n_th;
    bool extension = false;

    int coarse_points = 0;
    double tolerance = 0;
    int evaluations = 0;
    double bracket_lo = 0;
    double bracket_hi = 0;
};

/// Transmissivity minimizing the hybrid error probability at equal priors.
OptimizationResult optimize_tau(double alpha, double lo, const DetectorModel &detector, Benchmark benchmark);

/// Same optimization for the infinite-LO hybrid receiver, against Kennedy.
OptimizationResult optimize_tau_hd(double alpha);

/// lambda solving sqrt(2 / (pi lambda)) = 4 e^{2 lambda} erfc(sqrt(2 lambda)),
/// the large-energy optimum of alpha^2 (1 - tau) in the infinite-LO limit.
double solve_lambda_hd();

/// Left-hand side minus right-hand side of the lambda root equation.
double lambda_hd_residual(double lambda);

/// Saturation ratio e^{4 lambda} erfc(sqrt(2 lambda)) of the infinite-LO hybrid
/// receiver against Kennedy.
double r_infinity_hd();

struct AnsatzFit {
    double lambda_z = 0;
    /// |lambda(hi) - lambda(hi / 2)|: how far the estimate is from its limit.
    double lambda_uncertainty = 0;
    /// Smallest alpha^2 at which the optimal transmissivity leaves zero.
    double n_th_energy = 0;
    double fit_lo = 0;
    double fit_hi = 0;
    /// max |tau_opt - (1 - lambda / alpha^2)| over the fit range.
    double residual = 0;
};

class FitError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Optimal transmissivities above the threshold energy follow
/// tau_opt = 1 - lambda(z) / alpha^2. lambda(z) is read off at alpha^2 = hi,
/// cross-checked at hi / 2; the threshold energy is found by bisection.
/// Throws FitError when tau_opt does not behave that way in the range.
AnsatzFit ansatz_fit(double lo, const DetectorModel &detector, double alpha_sq_lo = 10, double alpha_sq_hi = 50);

struct SweepRow {
    double alpha_sq;
    double tau_opt;
    double p_hyb;
    double p_benchmark;
    double ratio;
    std::optional<int64_t> n_th;
};

struct SweepTable {
    std::vector<SweepRow> rows;
};

/// One optimize_tau per grid point, in grid order.
SweepTable ratio_curve(
    std::span<const double> alpha_sq_grid, double lo, const DetectorModel &detector, Benchmark benchmark);

}  // namespace hybridrx

#endif
