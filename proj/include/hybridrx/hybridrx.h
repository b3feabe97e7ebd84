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

/* C interface to the hybridrx library.
 *
 * Every fallible call returns an hrx_status and writes its result through an
 * out pointer. On failure the out pointer is left untouched and a description
 * is available from hrx_last_error() on the calling thread. Objects created by
 * hrx_*_create or returned through `T **out` are owned by the caller and must
 * be released with the matching hrx_*_destroy, which accepts NULL.
 *
 * A max_count of 0 stands for an unbounded photon-number resolution.
 */

#ifndef HYBRIDRX_HYBRIDRX_H
#define HYBRIDRX_HYBRIDRX_H

#include <stddef.h>
#include <stdint.h>

#if defined(HYBRIDRX_BUILDING_LIBRARY)
#define HRX_API __attribute__((visibility("default")))
#else
#define HRX_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hrx_status {
    HRX_OK = 0,
    HRX_ERR_NULL_POINTER = 1,
    HRX_ERR_INVALID_ARGUMENT = 2,
    HRX_ERR_DOMAIN = 3,
    HRX_ERR_OUT_OF_RANGE = 4,
    HRX_ERR_NUMERICAL = 5,
    HRX_ERR_FIT = 6,
    HRX_ERR_ALLOCATION = 7,
    HRX_ERR_INTERNAL = 8,
} hrx_status;

HRX_API const char *hrx_status_string(hrx_status status);
/* Message of the most recent failure on this thread, or "" if none. */
HRX_API const char *hrx_last_error(void);
HRX_API const char *hrx_version(void);

/* ---- detector ---------------------------------------------------------- */

typedef struct hrx_detector hrx_detector;

HRX_API hrx_status hrx_detector_create(
    int32_t max_count, double efficiency, double dark_rate, double visibility, hrx_detector **out);
HRX_API hrx_status hrx_detector_create_ideal(hrx_detector **out);
HRX_API void hrx_detector_destroy(hrx_detector *detector);
HRX_API hrx_status hrx_detector_get(
    const hrx_detector *detector, int32_t *max_count, double *efficiency, double *dark_rate, double *visibility);
HRX_API hrx_status hrx_detector_count_rate(const hrx_detector *detector, double mean_photons, double *out);

/* ---- count statistics -------------------------------------------------- */

HRX_API hrx_status hrx_poisson_pmf(int64_t n, double rate, double *out);
HRX_API hrx_status hrx_pnr_pmf(int64_t n, double rate, int32_t max_count, double *out);
HRX_API hrx_status hrx_skellam_pmf(int64_t delta, double signal, double lo, double *out);
HRX_API hrx_status hrx_homodyne_pdf(double x, double signal, double *out);
/* Photon rates (constructive, destructive) of the two homodyne-like arms. */
HRX_API hrx_status hrx_homodyne_like_rates(double signal, double lo, double visibility, double *mu_c, double *mu_d);

typedef struct hrx_distribution hrx_distribution;

/* Law of n_c - n_d for two detectors of the given model seeing mu_c and mu_d. */
HRX_API hrx_status hrx_difference_distribution(
    double mu_c, double mu_d, const hrx_detector *detector, hrx_distribution **out);
/* Count distribution of one detector seeing `rate` (already including loss and dark counts). */
HRX_API hrx_status hrx_pnr_distribution(double rate, int32_t max_count, hrx_distribution **out);
HRX_API void hrx_distribution_destroy(hrx_distribution *dist);
HRX_API hrx_status hrx_distribution_support(const hrx_distribution *dist, int64_t *first, int64_t *last);
/* Zero outside the support. */
HRX_API hrx_status hrx_distribution_pmf(const hrx_distribution *dist, int64_t k, double *out);
HRX_API hrx_status hrx_distribution_moments(const hrx_distribution *dist, double *total, double *mean, double *variance);

/* ---- decision ---------------------------------------------------------- */

typedef struct hrx_threshold {
    int64_t n_th;
    /* Label decided when n >= n_th. */
    int32_t orientation;
    int32_t degenerate;
} hrx_threshold;

typedef struct hrx_hypothesis {
    int32_t label;
    double count_rate;
    double prior;
} hrx_hypothesis;

HRX_API hrx_status hrx_posterior(
    int64_t n, const hrx_hypothesis *h0, const hrx_hypothesis *h1, int32_t max_count, double *post0, double *post1);
HRX_API hrx_status hrx_correct_probability(
    const hrx_hypothesis *h0, const hrx_hypothesis *h1, int32_t max_count, double *out);
HRX_API hrx_status hrx_map_threshold(
    const hrx_hypothesis *h0, const hrx_hypothesis *h1, int32_t max_count, hrx_threshold *out);
HRX_API hrx_status hrx_threshold_dark(double alpha, double dark_rate, int32_t max_count, hrx_threshold *out);
HRX_API hrx_status hrx_threshold_visibility(double alpha, double visibility, int32_t max_count, hrx_threshold *out);
HRX_API hrx_status hrx_threshold_general(double alpha, double beta, hrx_threshold *out);

/* ---- receivers --------------------------------------------------------- */

typedef struct hrx_signal {
    double alpha;
    /* Local oscillator amplitude z. */
    double lo;
    double q0;
    double q1;
    /* Transmissivity of the splitter feeding the displacement stage. */
    double tau;
} hrx_signal;

typedef struct hrx_receiver_result {
    double p_err;
    double tau_used;
    int32_t has_n_th;
    int64_t n_th;
    double p_err_given_0;
    double p_err_given_1;
    /* Set when the configuration combines several detector imperfections. */
    int32_t extension;
} hrx_receiver_result;

HRX_API hrx_status hrx_helstrom_bound(double alpha, double q0, double q1, double *out);
HRX_API hrx_status hrx_kennedy_error(double alpha, double efficiency, double *out);
HRX_API hrx_status hrx_homodyne_sql(double alpha, double *out);
HRX_API hrx_status hrx_homodyne_like_error(
    double alpha, double lo, const hrx_detector *detector, hrx_receiver_result *out);
HRX_API hrx_status hrx_hybrid_error(const hrx_signal *signal, const hrx_detector *detector, hrx_receiver_result *out);
HRX_API hrx_status hrx_hybrid_error_hd(double alpha, double tau, double *out);
HRX_API hrx_status hrx_dpnrm_error(double alpha, const hrx_detector *detector, hrx_receiver_result *out);
HRX_API hrx_status hrx_dpnrm_asymptote(double alpha, const hrx_detector *detector, double *out);

/* ---- optimizer --------------------------------------------------------- */

typedef enum hrx_benchmark {
    HRX_BENCHMARK_KENNEDY = 0,
    HRX_BENCHMARK_DPNRM = 1,
} hrx_benchmark;

typedef struct hrx_optimization {
    double tau_opt;
    double p_err_opt;
    double p_benchmark;
    double ratio;
    hrx_benchmark benchmark;
    int32_t has_n_th;
    int64_t n_th;
    int32_t extension;
    int32_t coarse_points;
    double tolerance;
    int32_t evaluations;
    double bracket_lo;
    double bracket_hi;
} hrx_optimization;

typedef struct hrx_ansatz_fit {
    double lambda_z;
    double lambda_uncertainty;
    double n_th_energy;
    double fit_lo;
    double fit_hi;
    double residual;
} hrx_ansatz_fit;

typedef struct hrx_sweep_row {
    double alpha_sq;
    double tau_opt;
    double p_hyb;
    double p_benchmark;
    double ratio;
    int32_t has_n_th;
    int64_t n_th;
} hrx_sweep_row;

typedef struct hrx_sweep_table hrx_sweep_table;

HRX_API hrx_status hrx_optimize_tau(
    double alpha, double lo, const hrx_detector *detector, hrx_benchmark benchmark, hrx_optimization *out);
HRX_API hrx_status hrx_optimize_tau_hd(double alpha, hrx_optimization *out);
HRX_API hrx_status hrx_solve_lambda_hd(double *out);
HRX_API hrx_status hrx_lambda_hd_residual(double lambda, double *out);
HRX_API hrx_status hrx_r_infinity_hd(double *out);
HRX_API hrx_status hrx_ansatz_fit_run(
    double lo, const hrx_detector *detector, double alpha_sq_lo, double alpha_sq_hi, hrx_ansatz_fit *out);
HRX_API hrx_status hrx_ratio_curve(
    const double *alpha_sq_grid,
    size_t points,
    double lo,
    const hrx_detector *detector,
    hrx_benchmark benchmark,
    hrx_sweep_table **out);
HRX_API void hrx_sweep_table_destroy(hrx_sweep_table *table);
HRX_API size_t hrx_sweep_table_size(const hrx_sweep_table *table);
HRX_API hrx_status hrx_sweep_table_row(const hrx_sweep_table *table, size_t index, hrx_sweep_row *out);

/* ---- Monte Carlo ------------------------------------------------------- */

typedef struct hrx_mc_estimate {
    double p_err_hat;
    double std_err;
    int64_t trials;
    uint64_t seed;
    int64_t errors;
} hrx_mc_estimate;

typedef enum hrx_receiver_kind {
    HRX_RECEIVER_HYBRID = 0,
    HRX_RECEIVER_HOMODYNE_LIKE = 1,
    HRX_RECEIVER_DPNRM = 2,
} hrx_receiver_kind;

typedef struct hrx_validation_case {
    hrx_receiver_kind receiver;
    double alpha_sq;
    double lo_sq;
    int32_t max_count;
    double efficiency;
    double dark_rate;
    double visibility;
} hrx_validation_case;

typedef struct hrx_validation_row {
    hrx_validation_case config;
    double tau;
    double analytic;
    hrx_mc_estimate estimate;
    double sigma;
    int32_t pass;
} hrx_validation_row;

typedef struct hrx_validation_report hrx_validation_report;

HRX_API int64_t hrx_min_trials(void);
HRX_API hrx_status hrx_simulate_hybrid(
    const hrx_signal *signal,
    const hrx_detector *detector,
    int64_t trials,
    uint64_t seed,
    int32_t threads,
    hrx_mc_estimate *out);
HRX_API hrx_status hrx_simulate_dpnrm(
    double alpha, const hrx_detector *detector, int64_t trials, uint64_t seed, int32_t threads, hrx_mc_estimate *out);
HRX_API hrx_status hrx_simulate_homodyne_like(
    double alpha,
    double lo,
    const hrx_detector *detector,
    int64_t trials,
    uint64_t seed,
    int32_t threads,
    hrx_mc_estimate *out);

/* Writes up to `capacity` cases of the default matrix and the full count. */
HRX_API hrx_status hrx_default_validation_matrix(
    double lo_sq, hrx_validation_case *cases, size_t capacity, size_t *count);
HRX_API hrx_status hrx_run_validation(
    const hrx_validation_case *cases,
    size_t count,
    int64_t trials,
    uint64_t seed,
    int32_t threads,
    hrx_validation_report **out);
HRX_API void hrx_validation_report_destroy(hrx_validation_report *report);
HRX_API size_t hrx_validation_report_size(const hrx_validation_report *report);
HRX_API hrx_status hrx_validation_report_row(
    const hrx_validation_report *report, size_t index, hrx_validation_row *out);
HRX_API hrx_status hrx_validation_report_summary(
    const hrx_validation_report *report, int32_t *failures, int32_t *allowed_outliers, int32_t *passed);

#ifdef __cplusplus
}
#endif

#endif
