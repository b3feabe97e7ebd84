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

#include <cmath>
#include <string>
#include <vector>

#include "gtest/gtest.h"

namespace {

struct DetectorHandle {
    hrx_detector *ptr = nullptr;
    DetectorHandle(int32_t m, double eta, double nu, double xi) {
        EXPECT_EQ(hrx_detector_create(m, eta, nu, xi, &ptr), HRX_OK);
    }
    ~DetectorHandle() {
        hrx_detector_destroy(ptr);
    }
};

}  // namespace

TEST(c_api, version_and_status_strings) {
    ASSERT_STREQ(hrx_version(), "1.0.0");
    ASSERT_STREQ(hrx_status_string(HRX_OK), "ok");
    for (int s = HRX_ERR_NULL_POINTER; s <= HRX_ERR_INTERNAL; s++) {
        ASSERT_GT(std::string(hrx_status_string(static_cast<hrx_status>(s))).size(), 0u);
    }
}

TEST(c_api, detector_lifecycle) {
    hrx_detector *d = nullptr;
    ASSERT_EQ(hrx_detector_create(3, 0.7, 1e-3, 0.998, &d), HRX_OK);
    int32_t m;
    double eta, nu, xi;
    ASSERT_EQ(hrx_detector_get(d, &m, &eta, &nu, &xi), HRX_OK);
    ASSERT_EQ(m, 3);
    ASSERT_EQ(eta, 0.7);
    ASSERT_EQ(nu, 1e-3);
    ASSERT_EQ(xi, 0.998);
    double rate;
    ASSERT_EQ(hrx_detector_count_rate(d, 2.0, &rate), HRX_OK);
    ASSERT_DOUBLE_EQ(rate, 0.7 * 2 + 1e-3);
    hrx_detector_destroy(d);
    hrx_detector_destroy(nullptr);

    ASSERT_EQ(hrx_detector_create_ideal(&d), HRX_OK);
    ASSERT_EQ(hrx_detector_get(d, &m, nullptr, nullptr, nullptr), HRX_OK);
    ASSERT_EQ(m, 0);
    hrx_detector_destroy(d);
}

TEST(c_api, invalid_arguments_set_last_error) {
    hrx_detector *d = nullptr;
    ASSERT_EQ(hrx_detector_create(3, 1.5, 0, 1, &d), HRX_ERR_INVALID_ARGUMENT);
    ASSERT_EQ(d, nullptr);
    ASSERT_GT(std::string(hrx_last_error()).size(), 0u);
    ASSERT_EQ(hrx_detector_create(-1, 1, 0, 1, &d), HRX_ERR_INVALID_ARGUMENT);
    ASSERT_EQ(hrx_detector_create(3, 1, 0, 1, nullptr), HRX_ERR_NULL_POINTER);

    double out = 0;
    ASSERT_EQ(hrx_kennedy_error(1, 1, &out), HRX_OK);
    ASSERT_STREQ(hrx_last_error(), "");
    ASSERT_EQ(hrx_kennedy_error(1, 1, nullptr), HRX_ERR_NULL_POINTER);
    ASSERT_EQ(hrx_kennedy_error(-1, 1, &out), HRX_ERR_INVALID_ARGUMENT);
}

TEST(c_api, null_handles_rejected) {
    double out;
    hrx_receiver_result r;
    hrx_signal s{1, 2, 0.5, 0.5, 0.5};
    ASSERT_EQ(hrx_detector_count_rate(nullptr, 1, &out), HRX_ERR_NULL_POINTER);
    ASSERT_EQ(hrx_hybrid_error(&s, nullptr, &r), HRX_ERR_NULL_POINTER);
    ASSERT_EQ(hrx_hybrid_error(nullptr, nullptr, &r), HRX_ERR_NULL_POINTER);
    ASSERT_EQ(hrx_distribution_pmf(nullptr, 0, &out), HRX_ERR_NULL_POINTER);
    ASSERT_EQ(hrx_sweep_table_row(nullptr, 0, nullptr), HRX_ERR_NULL_POINTER);
    ASSERT_EQ(hrx_sweep_table_size(nullptr), 0u);
    ASSERT_EQ(hrx_validation_report_size(nullptr), 0u);
}

TEST(c_api, receiver_values) {
    double v;
    ASSERT_EQ(hrx_helstrom_bound(1, 0.5, 0.5, &v), HRX_OK);
    ASSERT_NEAR(v, 0.0046000703695887131, 1e-16);
    ASSERT_EQ(hrx_kennedy_error(1, 1, &v), HRX_OK);
    ASSERT_NEAR(v, 0.0091578194443670901, 1e-16);
    ASSERT_EQ(hrx_homodyne_sql(1, &v), HRX_OK);
    ASSERT_NEAR(v, 0.022750131948179207, 1e-16);
    ASSERT_EQ(hrx_hybrid_error_hd(1, 0.5, &v), HRX_OK);
    ASSERT_NEAR(v, 0.010644066369522461, 1e-16);

    DetectorHandle dark(3, 1, 1e-3, 1);
    hrx_receiver_result r;
    ASSERT_EQ(hrx_dpnrm_error(std::sqrt(30.0), dark.ptr, &r), HRX_OK);
    ASSERT_EQ(r.tau_used, 1);
    ASSERT_TRUE(r.has_n_th);
    double asym;
    ASSERT_EQ(hrx_dpnrm_asymptote(std::sqrt(30.0), dark.ptr, &asym), HRX_OK);
    ASSERT_NEAR(asym, 8.327085832639038e-11, 1e-20);
    ASSERT_NEAR(r.p_err / asym, 1, 1e-6);

    DetectorHandle ideal(0, 1, 0, 1);
    ASSERT_EQ(hrx_dpnrm_error(1, ideal.ptr, &r), HRX_ERR_DOMAIN);

    hrx_signal s{1, std::sqrt(5.0), 0.5, 0.5, 1};
    ASSERT_EQ(hrx_hybrid_error(&s, ideal.ptr, &r), HRX_OK);
    ASSERT_NEAR(r.p_err, 0.0091578194443670901, 1e-15);
    s.tau = 0;
    hrx_receiver_result hl;
    ASSERT_EQ(hrx_hybrid_error(&s, ideal.ptr, &r), HRX_OK);
    ASSERT_EQ(hrx_homodyne_like_error(1, std::sqrt(5.0), ideal.ptr, &hl), HRX_OK);
    ASSERT_NEAR(r.p_err, hl.p_err, 1e-15);
    ASSERT_FALSE(r.extension);
}

TEST(c_api, distributions) {
    double v;
    ASSERT_EQ(hrx_pnr_pmf(3, 4, 3, &v), HRX_OK);
    double tail = 0;
    for (int k = 0; k < 3; k++) {
        double p;
        ASSERT_EQ(hrx_poisson_pmf(k, 4, &p), HRX_OK);
        tail += p;
    }
    ASSERT_NEAR(v, 1 - tail, 1e-15);
    ASSERT_EQ(hrx_pnr_pmf(3, 4, -2, &v), HRX_ERR_INVALID_ARGUMENT);

    double c, d;
    ASSERT_EQ(hrx_homodyne_like_rates(1, std::sqrt(5.0), 1, &c, &d), HRX_OK);
    ASSERT_NEAR(c, 5.2360679774997897, 1e-12);
    ASSERT_NEAR(d, 0.76393202250021030, 1e-12);

    DetectorHandle det(3, 1, 0, 1);
    hrx_distribution *dist = nullptr;
    ASSERT_EQ(hrx_difference_distribution(c, d, det.ptr, &dist), HRX_OK);
    int64_t first, last;
    ASSERT_EQ(hrx_distribution_support(dist, &first, &last), HRX_OK);
    ASSERT_EQ(first, -3);
    ASSERT_EQ(last, 3);
    double total, mean, var;
    ASSERT_EQ(hrx_distribution_moments(dist, &total, &mean, &var), HRX_OK);
    ASSERT_NEAR(total, 1, 1e-14);
    ASSERT_EQ(hrx_distribution_pmf(dist, 10, &v), HRX_OK);
    ASSERT_EQ(v, 0);
    hrx_distribution_destroy(dist);
}

TEST(c_api, decision) {
    hrx_threshold t;
    ASSERT_EQ(hrx_threshold_dark(std::sqrt(10.0), 1e-3, 5, &t), HRX_OK);
    ASSERT_EQ(t.n_th, 4);
    ASSERT_EQ(hrx_threshold_visibility(std::sqrt(10.0), 0.998, 0, &t), HRX_OK);
    ASSERT_EQ(t.n_th, 6);

    hrx_hypothesis h0{0, 0.01, 0.5};
    hrx_hypothesis h1{1, 4.0, 0.5};
    double p0, p1;
    ASSERT_EQ(hrx_posterior(1, &h0, &h1, 3, &p0, &p1), HRX_OK);
    ASSERT_NEAR(p0 + p1, 1, 1e-15);
    ASSERT_LT(p0, p1);
    ASSERT_EQ(hrx_map_threshold(&h0, &h1, 3, &t), HRX_OK);
    ASSERT_EQ(t.orientation, 1);
    double pc;
    ASSERT_EQ(hrx_correct_probability(&h0, &h1, 3, &pc), HRX_OK);
    ASSERT_GT(pc, 0.5);
    ASSERT_LE(pc, 1);
}

TEST(c_api, optimizer) {
    double lambda, residual, r_inf;
    ASSERT_EQ(hrx_solve_lambda_hd(&lambda), HRX_OK);
    ASSERT_NEAR(lambda, 0.093636973377048743, 1e-10);
    ASSERT_EQ(hrx_lambda_hd_residual(lambda, &residual), HRX_OK);
    ASSERT_LT(std::abs(residual), 1e-9);
    ASSERT_EQ(hrx_r_infinity_hd(&r_inf), HRX_OK);
    ASSERT_NEAR(r_inf, 0.78611924440696149, 1e-10);

    DetectorHandle dark(3, 1, 1e-3, 1);
    hrx_optimization o;
    ASSERT_EQ(hrx_optimize_tau(1.0, std::sqrt(5.0), dark.ptr, HRX_BENCHMARK_DPNRM, &o), HRX_OK);
    ASSERT_EQ(o.benchmark, HRX_BENCHMARK_DPNRM);
    ASSERT_EQ(o.coarse_points, 1001);
    ASSERT_EQ(o.tolerance, 1e-5);
    ASSERT_LE(o.p_err_opt, o.p_benchmark * (1 + 1e-12));
    ASSERT_EQ(hrx_optimize_tau(1.0, 2, dark.ptr, static_cast<hrx_benchmark>(9), &o), HRX_ERR_INVALID_ARGUMENT);

    hrx_ansatz_fit fit;
    ASSERT_EQ(hrx_ansatz_fit_run(std::sqrt(5.0), dark.ptr, 10, 50, &fit), HRX_ERR_FIT);

    double grid[] = {0.5, 1, 2};
    hrx_sweep_table *table = nullptr;
    ASSERT_EQ(hrx_ratio_curve(grid, 3, std::sqrt(5.0), dark.ptr, HRX_BENCHMARK_KENNEDY, &table), HRX_OK);
    ASSERT_EQ(hrx_sweep_table_size(table), 3u);
    hrx_sweep_row row;
    ASSERT_EQ(hrx_sweep_table_row(table, 2, &row), HRX_OK);
    ASSERT_EQ(row.alpha_sq, 2);
    ASSERT_EQ(hrx_sweep_table_row(table, 3, &row), HRX_ERR_OUT_OF_RANGE);
    hrx_sweep_table_destroy(table);
    double bad[] = {2, 1};
    ASSERT_EQ(hrx_ratio_curve(bad, 2, 2, dark.ptr, HRX_BENCHMARK_KENNEDY, &table), HRX_ERR_INVALID_ARGUMENT);
}

TEST(c_api, monte_carlo) {
    ASSERT_EQ(hrx_min_trials(), 1000);
    DetectorHandle det(3, 0.7, 1e-3, 0.998);
    hrx_signal s{1, std::sqrt(5.0), 0.5, 0.5, 0.6};
    hrx_mc_estimate a, b;
    ASSERT_EQ(hrx_simulate_hybrid(&s, det.ptr, 10000, 9, 1, &a), HRX_OK);
    ASSERT_EQ(hrx_simulate_hybrid(&s, det.ptr, 10000, 9, 2, &b), HRX_OK);
    ASSERT_EQ(a.errors, b.errors);
    ASSERT_EQ(a.trials, 10000);
    ASSERT_EQ(hrx_simulate_hybrid(&s, det.ptr, 10, 9, 1, &a), HRX_ERR_INVALID_ARGUMENT);
    ASSERT_EQ(hrx_simulate_dpnrm(1, det.ptr, 10000, 9, 1, &a), HRX_OK);
    ASSERT_EQ(hrx_simulate_homodyne_like(1, 2, det.ptr, 10000, 9, 1, &a), HRX_OK);
}

TEST(c_api, validation_matrix) {
    size_t count = 0;
    ASSERT_EQ(hrx_default_validation_matrix(5, nullptr, 0, &count), HRX_OK);
    ASSERT_EQ(count, 216u);
    std::vector<hrx_validation_case> cases(count);
    ASSERT_EQ(hrx_default_validation_matrix(5, cases.data(), cases.size(), &count), HRX_OK);
    ASSERT_EQ(cases[0].receiver, HRX_RECEIVER_HYBRID);
    ASSERT_EQ(cases.back().receiver, HRX_RECEIVER_DPNRM);

    hrx_validation_report *report = nullptr;
    ASSERT_EQ(hrx_run_validation(cases.data(), 3, 10000, 42, 1, &report), HRX_OK);
    ASSERT_EQ(hrx_validation_report_size(report), 3u);
    hrx_validation_row row;
    ASSERT_EQ(hrx_validation_report_row(report, 1, &row), HRX_OK);
    ASSERT_EQ(row.config.alpha_sq, cases[1].alpha_sq);
    ASSERT_EQ(row.estimate.trials, 10000);
    int32_t failures, allowed, passed;
    ASSERT_EQ(hrx_validation_report_summary(report, &failures, &allowed, &passed), HRX_OK);
    ASSERT_EQ(passed, failures <= allowed);
    hrx_validation_report_destroy(report);

    cases[0].max_count = -1;
    ASSERT_EQ(hrx_run_validation(cases.data(), 1, 10000, 42, 1, &report), HRX_ERR_INVALID_ARGUMENT);
}
