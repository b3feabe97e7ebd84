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

#include "hybridrx/hybridrx.h"

#include <new>
#include <stdexcept>
#include <string>

#include "hybridrx/distributions.h"
#include "hybridrx/map_decision.h"
#include "hybridrx/mc_oracle.h"
#include "hybridrx/optimizer.h"
#include "hybridrx/receivers.h"

struct hrx_detector {
    hybridrx::DetectorModel model;
};

struct hrx_distribution {
    hybridrx::CountDistribution dist;
};

struct hrx_sweep_table {
    hybridrx::SweepTable table;
};

struct hrx_validation_report {
    hybridrx::ValidationReport report;
};

namespace {

using namespace hybridrx;

thread_local std::string last_error;

hrx_status fail(hrx_status status, const char *message) {
    last_error = message;
    return status;
}

/// Runs `body`, translating exceptions into status codes.
template <typename Body>
hrx_status guarded(Body &&body) {
    try {
        body();
        last_error.clear();
        return HRX_OK;
    } catch (const FitError &e) {
        return fail(HRX_ERR_FIT, e.what());
    } catch (const std::invalid_argument &e) {
        return fail(HRX_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::domain_error &e) {
        return fail(HRX_ERR_DOMAIN, e.what());
    } catch (const std::out_of_range &e) {
        return fail(HRX_ERR_OUT_OF_RANGE, e.what());
    } catch (const std::bad_alloc &) {
        return fail(HRX_ERR_ALLOCATION, "allocation failed");
    } catch (const std::runtime_error &e) {
        return fail(HRX_ERR_NUMERICAL, e.what());
    } catch (const std::exception &e) {
        return fail(HRX_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(HRX_ERR_INTERNAL, "unknown error");
    }
}

#define HRX_REQUIRE(ptr)                                                  \
    do {                                                                  \
        if ((ptr) == nullptr) {                                           \
            return fail(HRX_ERR_NULL_POINTER, #ptr " must not be NULL"); \
        }                                                                 \
    } while (0)

Resolution to_resolution(int32_t max_count) {
    if (max_count < 0) {
        throw std::invalid_argument("max_count must be >= 0 (0 means unbounded)");
    }
    return max_count == 0 ? Resolution::unbounded() : Resolution(max_count);
}

int32_t from_resolution(Resolution r) {
    return r.is_bounded() ? r.max_count() : 0;
}

BinaryHypothesis to_hypothesis(const hrx_hypothesis &h) {
    return {h.label, h.count_rate, h.prior};
}

hrx_threshold to_c(const ThresholdRule &r) {
    return {r.n_th, r.orientation, r.degenerate ? 1 : 0};
}

SignalConfig to_config(const hrx_signal &s) {
    return {s.alpha, s.lo, s.q0, s.q1, s.tau};
}

hrx_receiver_result to_c(const ReceiverResult &r) {
    hrx_receiver_result out{};
    out.p_err = r.p_err;
    out.tau_used = r.tau_used;
    out.has_n_th = r.n_th_used.has_value();
    out.n_th = r.n_th_used.value_or(0);
    out.p_err_given_0 = r.p_err_given_0;
    out.p_err_given_1 = r.p_err_given_1;
    out.extension = r.extension;
    return out;
}

Benchmark to_benchmark(hrx_benchmark b) {
    switch (b) {
        case HRX_BENCHMARK_KENNEDY:
            return Benchmark::Kennedy;
        case HRX_BENCHMARK_DPNRM:
            return Benchmark::Dpnrm;
    }
    throw std::invalid_argument("unknown benchmark");
}

hrx_optimization to_c(const OptimizationResult &r) {
    hrx_optimization out{};
    out.tau_opt = r.tau_opt;
    out.p_err_opt = r.p_err_opt;
    out.p_benchmark = r.p_benchmark;
    out.ratio = r.ratio_vs_benchmark;
    out.benchmark = r.benchmark == Benchmark::Kennedy ? HRX_BENCHMARK_KENNEDY : HRX_BENCHMARK_DPNRM;
    out.has_n_th = r.n_th.has_value();
    out.n_th = r.n_th.value_or(0);
    out.extension = r.extension;
    out.coarse_points = r.coarse_points;
    out.tolerance = r.tolerance;
    out.evaluations = r.evaluations;
    out.bracket_lo = r.bracket_lo;
    out.bracket_hi = r.bracket_hi;
    return out;
}

hrx_mc_estimate to_c(const McEstimate &e) {
    return {e.p_err_hat, e.std_err, e.trials, e.seed, e.errors};
}

ReceiverKind to_kind(hrx_receiver_kind k) {
    switch (k) {
        case HRX_RECEIVER_HYBRID:
            return ReceiverKind::Hybrid;
        case HRX_RECEIVER_HOMODYNE_LIKE:
            return ReceiverKind::HomodyneLike;
        case HRX_RECEIVER_DPNRM:
            return ReceiverKind::Dpnrm;
    }
    throw std::invalid_argument("unknown receiver kind");
}

hrx_receiver_kind to_c(ReceiverKind k) {
    switch (k) {
        case ReceiverKind::Hybrid:
            return HRX_RECEIVER_HYBRID;
        case ReceiverKind::HomodyneLike:
            return HRX_RECEIVER_HOMODYNE_LIKE;
        case ReceiverKind::Dpnrm:
            break;
    }
    return HRX_RECEIVER_DPNRM;
}

hrx_validation_case to_c(const ValidationCase &c) {
    const DetectorModel &d = c.detector;
    return {to_c(c.receiver), c.alpha_sq, c.lo_sq, from_resolution(d.resolution), d.efficiency, d.dark_rate, d.visibility};
}

ValidationCase to_case(const hrx_validation_case &c) {
    DetectorModel d;
    d.resolution = to_resolution(c.max_count);
    d.efficiency = c.efficiency;
    d.dark_rate = c.dark_rate;
    d.visibility = c.visibility;
    d.validate();
    return {to_kind(c.receiver), c.alpha_sq, c.lo_sq, d};
}

}  // namespace

extern "C" {

HRX_API const char *hrx_status_string(hrx_status status) {
    switch (status) {
        case HRX_OK:
            return "ok";
        case HRX_ERR_NULL_POINTER:
            return "null pointer";
        case HRX_ERR_INVALID_ARGUMENT:
            return "invalid argument";
        case HRX_ERR_DOMAIN:
            return "domain error";
        case HRX_ERR_OUT_OF_RANGE:
            return "out of range";
        case HRX_ERR_NUMERICAL:
            return "numerical failure";
        case HRX_ERR_FIT:
            return "fit failure";
        case HRX_ERR_ALLOCATION:
            return "allocation failure";
        case HRX_ERR_INTERNAL:
            return "internal error";
    }
    return "unknown status";
}

HRX_API const char *hrx_last_error(void) {
    return last_error.c_str();
}

HRX_API const char *hrx_version(void) {
    return "1.0.0";
}

HRX_API hrx_status hrx_detector_create(
    int32_t max_count, double efficiency, double dark_rate, double visibility, hrx_detector **out) {
    HRX_REQUIRE(out);
    return guarded([&] {
        DetectorModel d;
        d.resolution = to_resolution(max_count);
        d.efficiency = efficiency;
        d.dark_rate = dark_rate;
        d.visibility = visibility;
        d.validate();
        *out = new hrx_detector{d};
    });
}

HRX_API hrx_status hrx_detector_create_ideal(hrx_detector **out) {
    return hrx_detector_create(0, 1, 0, 1, out);
}

HRX_API void hrx_detector_destroy(hrx_detector *detector) {
    delete detector;
}

HRX_API hrx_status hrx_detector_get(
    const hrx_detector *detector, int32_t *max_count, double *efficiency, double *dark_rate, double *visibility) {
    HRX_REQUIRE(detector);
    const DetectorModel &d = detector->model;
    if (max_count) {
        *max_count = from_resolution(d.resolution);
    }
    if (efficiency) {
        *efficiency = d.efficiency;
    }
    if (dark_rate) {
        *dark_rate = d.dark_rate;
    }
    if (visibility) {
        *visibility = d.visibility;
    }
    last_error.clear();
    return HRX_OK;
}

HRX_API hrx_status hrx_detector_count_rate(const hrx_detector *detector, double mean_photons, double *out) {
    HRX_REQUIRE(detector);
    HRX_REQUIRE(out);
    return guarded([&] {
        if (!(mean_photons >= 0)) {
            throw std::invalid_argument("mean photon number must be non-negative");
        }
        *out = detector->model.count_rate(mean_photons);
    });
}

HRX_API hrx_status hrx_poisson_pmf(int64_t n, double rate, double *out) {
    HRX_REQUIRE(out);
    return guarded([&] { *out = poisson_pmf(n, rate); });
}

HRX_API hrx_status hrx_pnr_pmf(int64_t n, double rate, int32_t max_count, double *out) {
    HRX_REQUIRE(out);
    return guarded([&] { *out = pnr_outcome_pmf(n, rate, to_resolution(max_count)); });
}

HRX_API hrx_status hrx_skellam_pmf(int64_t delta, double signal, double lo, double *out) {
    HRX_REQUIRE(out);
    return guarded([&] { *out = skellam_pmf(delta, signal, lo); });
}

HRX_API hrx_status hrx_homodyne_pdf(double x, double signal, double *out) {
    HRX_REQUIRE(out);
    return guarded([&] { *out = homodyne_pdf(x, signal); });
}

HRX_API hrx_status hrx_homodyne_like_rates(double signal, double lo, double visibility, double *mu_c, double *mu_d) {
    HRX_REQUIRE(mu_c);
    HRX_REQUIRE(mu_d);
    return guarded([&] {
        auto [c, d] = homodyne_like_rates(signal, lo, visibility);
        *mu_c = c;
        *mu_d = d;
    });
}

HRX_API hrx_status hrx_difference_distribution(
    double mu_c, double mu_d, const hrx_detector *detector, hrx_distribution **out) {
    HRX_REQUIRE(detector);
    HRX_REQUIRE(out);
    return guarded([&] { *out = new hrx_distribution{difference_pmf(mu_c, mu_d, detector->model)}; });
}

HRX_API hrx_status hrx_pnr_distribution(double rate, int32_t max_count, hrx_distribution **out) {
    HRX_REQUIRE(out);
    return guarded([&] { *out = new hrx_distribution{pnr_distribution(rate, to_resolution(max_count))}; });
}

HRX_API void hrx_distribution_destroy(hrx_distribution *dist) {
    delete dist;
}

HRX_API hrx_status hrx_distribution_support(const hrx_distribution *dist, int64_t *first, int64_t *last) {
    HRX_REQUIRE(dist);
    HRX_REQUIRE(first);
    HRX_REQUIRE(last);
    *first = dist->dist.first();
    *last = dist->dist.last();
    last_error.clear();
    return HRX_OK;
}

HRX_API hrx_status hrx_distribution_pmf(const hrx_distribution *dist, int64_t k, double *out) {
    HRX_REQUIRE(dist);
    HRX_REQUIRE(out);
    return guarded([&] { *out = dist->dist(k); });
}

HRX_API hrx_status hrx_distribution_moments(const hrx_distribution *dist, double *total, double *mean, double *variance) {
    HRX_REQUIRE(dist);
    return guarded([&] {
        if (total) {
            *total = dist->dist.total();
        }
        if (mean) {
            *mean = dist->dist.mean();
        }
        if (variance) {
            *variance = dist->dist.variance();
        }
    });
}

HRX_API hrx_status hrx_posterior(
    int64_t n, const hrx_hypothesis *h0, const hrx_hypothesis *h1, int32_t max_count, double *post0, double *post1) {
    HRX_REQUIRE(h0);
    HRX_REQUIRE(h1);
    HRX_REQUIRE(post0);
    HRX_REQUIRE(post1);
    return guarded([&] {
        auto [p0, p1] = posterior(n, to_hypothesis(*h0), to_hypothesis(*h1), to_resolution(max_count));
        *post0 = p0;
        *post1 = p1;
    });
}

HRX_API hrx_status hrx_correct_probability(
    const hrx_hypothesis *h0, const hrx_hypothesis *h1, int32_t max_count, double *out) {
    HRX_REQUIRE(h0);
    HRX_REQUIRE(h1);
    HRX_REQUIRE(out);
    return guarded(
        [&] { *out = correct_probability(to_hypothesis(*h0), to_hypothesis(*h1), to_resolution(max_count)); });
}

HRX_API hrx_status hrx_map_threshold(
    const hrx_hypothesis *h0, const hrx_hypothesis *h1, int32_t max_count, hrx_threshold *out) {
    HRX_REQUIRE(h0);
    HRX_REQUIRE(h1);
    HRX_REQUIRE(out);
    return guarded(
        [&] { *out = to_c(map_threshold(to_hypothesis(*h0), to_hypothesis(*h1), to_resolution(max_count))); });
}

HRX_API hrx_status hrx_threshold_dark(double alpha, double dark_rate, int32_t max_count, hrx_threshold *out) {
    HRX_REQUIRE(out);
    return guarded([&] { *out = to_c(threshold_dark(alpha, dark_rate, to_resolution(max_count))); });
}

HRX_API hrx_status hrx_threshold_visibility(double alpha, double visibility, int32_t max_count, hrx_threshold *out) {
    HRX_REQUIRE(out);
    return guarded([&] { *out = to_c(threshold_visibility(alpha, visibility, to_resolution(max_count))); });
}

HRX_API hrx_status hrx_threshold_general(double alpha, double beta, hrx_threshold *out) {
    HRX_REQUIRE(out);
    return guarded([&] { *out = to_c(threshold_general(alpha, beta)); });
}

HRX_API hrx_status hrx_helstrom_bound(double alpha, double q0, double q1, double *out) {
    HRX_REQUIRE(out);
    return guarded([&] { *out = helstrom_bound(alpha, q0, q1); });
}

HRX_API hrx_status hrx_kennedy_error(double alpha, double efficiency, double *out) {
    HRX_REQUIRE(out);
    return guarded([&] { *out = kennedy_error(alpha, efficiency); });
}

HRX_API hrx_status hrx_homodyne_sql(double alpha, double *out) {
    HRX_REQUIRE(out);
    return guarded([&] { *out = homodyne_sql(alpha); });
}

HRX_API hrx_status hrx_homodyne_like_error(
    double alpha, double lo, const hrx_detector *detector, hrx_receiver_result *out) {
    HRX_REQUIRE(detector);
    HRX_REQUIRE(out);
    return guarded([&] { *out = to_c(homodyne_like_error(alpha, lo, detector->model)); });
}

HRX_API hrx_status hrx_hybrid_error(const hrx_signal *signal, const hrx_detector *detector, hrx_receiver_result *out) {
    HRX_REQUIRE(signal);
    HRX_REQUIRE(detector);
    HRX_REQUIRE(out);
    return guarded([&] { *out = to_c(hybrid_error(to_config(*signal), detector->model)); });
}

HRX_API hrx_status hrx_hybrid_error_hd(double alpha, double tau, double *out) {
    HRX_REQUIRE(out);
    return guarded([&] { *out = hybrid_error_hd(alpha, tau); });
}

HRX_API hrx_status hrx_dpnrm_error(double alpha, const hrx_detector *detector, hrx_receiver_result *out) {
    HRX_REQUIRE(detector);
    HRX_REQUIRE(out);
    return guarded([&] { *out = to_c(dpnrm_error(alpha, detector->model)); });
}

HRX_API hrx_status hrx_dpnrm_asymptote(double alpha, const hrx_detector *detector, double *out) {
    HRX_REQUIRE(detector);
    HRX_REQUIRE(out);
    return guarded([&] { *out = dpnrm_asymptote(alpha, detector->model); });
}

HRX_API hrx_status hrx_optimize_tau(
    double alpha, double lo, const hrx_detector *detector, hrx_benchmark benchmark, hrx_optimization *out) {
    HRX_REQUIRE(detector);
    HRX_REQUIRE(out);
    return guarded([&] { *out = to_c(optimize_tau(alpha, lo, detector->model, to_benchmark(benchmark))); });
}

HRX_API hrx_status hrx_optimize_tau_hd(double alpha, hrx_optimization *out) {
    HRX_REQUIRE(out);
    return guarded([&] { *out = to_c(optimize_tau_hd(alpha)); });
}

HRX_API hrx_status hrx_solve_lambda_hd(double *out) {
    HRX_REQUIRE(out);
    return guarded([&] { *out = solve_lambda_hd(); });
}

HRX_API hrx_status hrx_lambda_hd_residual(double lambda, double *out) {
    HRX_REQUIRE(out);
    return guarded([&] {
        if (!(lambda > 0)) {
            throw std::invalid_argument("lambda must be positive");
        }
        *out = lambda_hd_residual(lambda);
    });
}

HRX_API hrx_status hrx_r_infinity_hd(double *out) {
    HRX_REQUIRE(out);
    return guarded([&] { *out = r_infinity_hd(); });
}

HRX_API hrx_status hrx_ansatz_fit_run(
    double lo, const hrx_detector *detector, double alpha_sq_lo, double alpha_sq_hi, hrx_ansatz_fit *out) {
    HRX_REQUIRE(detector);
    HRX_REQUIRE(out);
    return guarded([&] {
        auto f = ansatz_fit(lo, detector->model, alpha_sq_lo, alpha_sq_hi);
        *out = {f.lambda_z, f.lambda_uncertainty, f.n_th_energy, f.fit_lo, f.fit_hi, f.residual};
    });
}

HRX_API hrx_status hrx_ratio_curve(
    const double *alpha_sq_grid,
    size_t points,
    double lo,
    const hrx_detector *detector,
    hrx_benchmark benchmark,
    hrx_sweep_table **out) {
    HRX_REQUIRE(alpha_sq_grid);
    HRX_REQUIRE(detector);
    HRX_REQUIRE(out);
    return guarded([&] {
        std::span<const double> grid(alpha_sq_grid, points);
        *out = new hrx_sweep_table{ratio_curve(grid, lo, detector->model, to_benchmark(benchmark))};
    });
}

HRX_API void hrx_sweep_table_destroy(hrx_sweep_table *table) {
    delete table;
}

HRX_API size_t hrx_sweep_table_size(const hrx_sweep_table *table) {
    return table == nullptr ? 0 : table->table.rows.size();
}

HRX_API hrx_status hrx_sweep_table_row(const hrx_sweep_table *table, size_t index, hrx_sweep_row *out) {
    HRX_REQUIRE(table);
    HRX_REQUIRE(out);
    return guarded([&] {
        const SweepRow &r = table->table.rows.at(index);
        *out = {r.alpha_sq, r.tau_opt, r.p_hyb, r.p_benchmark, r.ratio, r.n_th.has_value(), r.n_th.value_or(0)};
    });
}

HRX_API int64_t hrx_min_trials(void) {
    return kMinTrials;
}

HRX_API hrx_status hrx_simulate_hybrid(
    const hrx_signal *signal,
    const hrx_detector *detector,
    int64_t trials,
    uint64_t seed,
    int32_t threads,
    hrx_mc_estimate *out) {
    HRX_REQUIRE(signal);
    HRX_REQUIRE(detector);
    HRX_REQUIRE(out);
    return guarded([&] { *out = to_c(simulate_hybrid(to_config(*signal), detector->model, trials, seed, threads)); });
}

HRX_API hrx_status hrx_simulate_dpnrm(
    double alpha, const hrx_detector *detector, int64_t trials, uint64_t seed, int32_t threads, hrx_mc_estimate *out) {
    HRX_REQUIRE(detector);
    HRX_REQUIRE(out);
    return guarded([&] { *out = to_c(simulate_dpnrm(alpha, detector->model, trials, seed, threads)); });
}

HRX_API hrx_status hrx_simulate_homodyne_like(
    double alpha,
    double lo,
    const hrx_detector *detector,
    int64_t trials,
    uint64_t seed,
    int32_t threads,
    hrx_mc_estimate *out) {
    HRX_REQUIRE(detector);
    HRX_REQUIRE(out);
    return guarded([&] { *out = to_c(simulate_homodyne_like(alpha, lo, detector->model, trials, seed, threads)); });
}

HRX_API hrx_status hrx_default_validation_matrix(
    double lo_sq, hrx_validation_case *cases, size_t capacity, size_t *count) {
    HRX_REQUIRE(count);
    if (capacity > 0 && cases == nullptr) {
        return fail(HRX_ERR_NULL_POINTER, "cases must not be NULL when capacity > 0");
    }
    return guarded([&] {
        auto matrix = default_validation_matrix(lo_sq);
        for (size_t i = 0; i < matrix.size() && i < capacity; i++) {
            cases[i] = to_c(matrix[i]);
        }
        *count = matrix.size();
    });
}

HRX_API hrx_status hrx_run_validation(
    const hrx_validation_case *cases,
    size_t count,
    int64_t trials,
    uint64_t seed,
    int32_t threads,
    hrx_validation_report **out) {
    HRX_REQUIRE(cases);
    HRX_REQUIRE(out);
    return guarded([&] {
        std::vector<ValidationCase> converted;
        converted.reserve(count);
        for (size_t i = 0; i < count; i++) {
            converted.push_back(to_case(cases[i]));
        }
        *out = new hrx_validation_report{run_validation(converted, trials, seed, threads)};
    });
}

HRX_API void hrx_validation_report_destroy(hrx_validation_report *report) {
    delete report;
}

HRX_API size_t hrx_validation_report_size(const hrx_validation_report *report) {
    return report == nullptr ? 0 : report->report.rows.size();
}

HRX_API hrx_status hrx_validation_report_row(
    const hrx_validation_report *report, size_t index, hrx_validation_row *out) {
    HRX_REQUIRE(report);
    HRX_REQUIRE(out);
    return guarded([&] {
        const ValidationRow &r = report->report.rows.at(index);
        *out = {to_c(r.config), r.tau, r.analytic, to_c(r.estimate), r.sigma, r.pass};
    });
}

HRX_API hrx_status hrx_validation_report_summary(
    const hrx_validation_report *report, int32_t *failures, int32_t *allowed_outliers, int32_t *passed) {
    HRX_REQUIRE(report);
    const ValidationReport &r = report->report;
    if (failures) {
        *failures = r.failures;
    }
    if (allowed_outliers) {
        *allowed_outliers = r.allowed_outliers;
    }
    if (passed) {
        *passed = r.passed();
    }
    last_error.clear();
    return HRX_OK;
}

}  // extern "C"
