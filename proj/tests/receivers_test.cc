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


#include "hybridrx/receivers.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"

using namespace hybridrx;

namespace {

DetectorModel detector(int m, double eta = 1, double nu = 0, double xi = 1) {
    DetectorModel d;
    d.resolution = m == 0 ? Resolution::unbounded() : Resolution(m);
    d.efficiency = eta;
    d.dark_rate = nu;
    d.visibility = xi;
    return d;
}

double hybrid(double alpha_sq, double lo_sq, double tau, const DetectorModel &d, double q0 = 0.5) {
    SignalConfig c{std::sqrt(alpha_sq), std::sqrt(lo_sq), q0, 1 - q0, tau};
    return hybrid_error(c, d).p_err;
}

/// PNR outcome probability from explicit Poisson terms; unbounded detectors are
/// truncated at `cap`.
double outcome(int64_t n, double rate, int m) {
    auto pois = [&](int64_t k) { return std::exp(-rate + k * std::log(rate) - std::lgamma(k + 1.0)); };
    if (rate == 0) {
        return n == 0 ? 1 : 0;
    }
    if (m == 0 || n < m) {
        return pois(n);
    }
    double head = 0;
    for (int64_t k = 0; k < m; k++) {
        head += pois(k);
    }
    return 1 - head;
}

/// Error probability of the hybrid receiver by enumerating every (n_c, n_d, n)
/// and deciding each final count by the larger prior-weighted likelihood of the
/// two hypotheses on the selected feed-forward branch.
double hybrid_enumerated(double alpha_sq, double lo_sq, double tau, const DetectorModel &d, double q0) {
    int m = d.resolution.is_bounded() ? d.resolution.max_count() : 0;
    int cap = m > 0 ? m : 80;
    double a = std::sqrt(alpha_sq);
    double z = std::sqrt(lo_sq);
    double xi = d.visibility;
    double prior[2] = {q0, 1 - q0};
    double total = 0;
    for (int hyp = 0; hyp < 2; hyp++) {
        double amp = hyp == 0 ? -a : a;
        double r = -std::sqrt(1 - tau) * amp;
        double rc = d.efficiency * (r * r + z * z + 2 * xi * z * r) / 2 + d.dark_rate;
        double rd = d.efficiency * (r * r + z * z - 2 * xi * z * r) / 2 + d.dark_rate;
        double branch_mass[2] = {0, 0};  // [Delta < 0, Delta >= 0]
        for (int i = 0; i <= cap; i++) {
            for (int j = 0; j <= cap; j++) {
                branch_mass[i - j >= 0] += outcome(i, rc, m) * outcome(j, rd, m);
            }
        }
        for (int branch = 0; branch < 2; branch++) {
            double beta = (branch == 1 ? 1 : -1) * std::sqrt(tau) * a;
            auto rate = [&](int hh) {
                double t = std::sqrt(tau) * (hh == 0 ? -a : a);
                double matched = xi * t + beta;
                return d.efficiency * (matched * matched + (1 - xi * xi) * t * t) + d.dark_rate;
            };
            int bright = rate(1) >= rate(0) ? 1 : 0;
            for (int n = 0; n <= cap; n++) {
                double w0 = prior[0] * outcome(n, rate(0), m);
                double w1 = prior[1] * outcome(n, rate(1), m);
                int decided = w0 > w1 ? 0 : w1 > w0 ? 1 : bright;
                if (decided != hyp) {
                    total += prior[hyp] * branch_mass[branch] * outcome(n, rate(hyp), m);
                }
            }
        }
    }
    return total;
}

}  // namespace

TEST(helstrom_bound, reference_values) {
    ASSERT_NEAR(helstrom_bound(1), 0.0046000703695887131, 1e-16);
    ASSERT_NEAR(helstrom_bound(1, 0.2, 0.8), 0.0029391407706672674, 1e-16);
    ASSERT_NEAR(helstrom_bound(0, 0.3, 0.7), 0.3, 1e-15);
    ASSERT_THROW(helstrom_bound(1, 0.3, 0.3), std::invalid_argument);
    ASSERT_THROW(helstrom_bound(-1), std::invalid_argument);
}

TEST(kennedy_error, reference_values) {
    ASSERT_NEAR(kennedy_error(1), 0.0091578194443670901, 1e-17);
    ASSERT_NEAR(kennedy_error(1, 0.5), 0.067667641618306346, 1e-16);
    ASSERT_EQ(kennedy_error(0), 0.5);
    ASSERT_THROW(kennedy_error(1, 0), std::invalid_argument);
}

TEST(homodyne_sql, reference_values) {
    ASSERT_NEAR(homodyne_sql(1), 0.022750131948179207, 1e-15 * 0.0227);
    ASSERT_EQ(homodyne_sql(0), 0.5);
}

TEST(receivers, ordering_against_helstrom) {
    for (double alpha_sq = 0.01; alpha_sq < 6; alpha_sq *= 1.3) {
        double a = std::sqrt(alpha_sq);
        double helstrom = helstrom_bound(a);
        ASSERT_LE(helstrom, kennedy_error(a));
        ASSERT_LE(helstrom, homodyne_sql(a));
        ASSERT_LE(helstrom, homodyne_like_error(a, std::sqrt(5.0), DetectorModel::ideal()).p_err);
    }
}

TEST(homodyne_like_error, matches_enumeration_oracle) {
    ASSERT_NEAR(homodyne_like_error(1, std::sqrt(5.0), DetectorModel::ideal()).p_err, 0.02611735801245775, 1e-13);
    ASSERT_NEAR(homodyne_like_error(1, std::sqrt(5.0), detector(3, 0.7, 1e-3, 0.998)).p_err, 0.05904871173733066,
                1e-13);
}

TEST(homodyne_like_error, zero_signal_is_a_coin_flip) {
    auto r = homodyne_like_error(0, 2, detector(3, 0.8, 1e-3, 0.99));
    ASSERT_NEAR(r.p_err, 0.5, 1e-15);
}

TEST(homodyne_like_error, approaches_sql_for_strong_lo) {
    for (double alpha_sq : {0.25, 1.0, 4.0}) {
        double a = std::sqrt(alpha_sq);
        double p = homodyne_like_error(a, 100, DetectorModel::ideal()).p_err;
        ASSERT_NEAR(p, homodyne_sql(a), 1e-3) << alpha_sq;
    }
}

TEST(homodyne_like_error, conditional_errors_average_to_total) {
    auto r = homodyne_like_error(0.8, 1.5, detector(5, 0.9, 1e-3, 0.998));
    ASSERT_NEAR(r.p_err, 0.5 * (r.p_err_given_0 + r.p_err_given_1), 1e-15);
    ASSERT_NEAR(r.p_err_given_0, r.p_err_given_1, 1e-15);
}

TEST(hybrid_error_hd, reference_values_and_limits) {
    ASSERT_NEAR(hybrid_error_hd(1, 0.5), 0.010644066369522461, 1e-16);
    for (double alpha_sq : {0.1, 1.0, 3.0}) {
        double a = std::sqrt(alpha_sq);
        ASSERT_NEAR(hybrid_error_hd(a, 0), homodyne_sql(a), 1e-15);
        ASSERT_NEAR(hybrid_error_hd(a, 1), kennedy_error(a), 1e-15);
    }
    ASSERT_THROW(hybrid_error_hd(1, 1.5), std::invalid_argument);
}

TEST(hybrid_error, matches_enumeration_oracle) {
    ASSERT_NEAR(hybrid(1, 5, 0.5, DetectorModel::ideal()), 0.01144132023331927, 1e-13);
    ASSERT_NEAR(hybrid(1, 5, 0.7, detector(3, 0.7, 1e-3, 0.998)), 0.03022316653837858, 1e-13);
    ASSERT_NEAR(hybrid(2, 3, 0.9, detector(2, 1, 1e-3, 1)), 9.422365045976105e-4, 1e-15);
    ASSERT_NEAR(hybrid(0.5, 5, 0.3, detector(0, 0.9, 0, 0.99)), 0.08457571296867190, 1e-13);
}

TEST(hybrid_error, matches_in_test_enumeration_over_random_configs) {
    std::mt19937_64 rng(20261015);
    std::uniform_real_distribution<double> unit(0, 1);
    const int ms[] = {0, 1, 2, 3, 5};
    for (int trial = 0; trial < 60; trial++) {
        double alpha_sq = 0.05 + 3 * unit(rng);
        double lo_sq = 0.5 + 6 * unit(rng);
        double tau = unit(rng);
        int m = ms[trial % 5];
        auto d = detector(m, 0.5 + 0.5 * unit(rng), trial % 2 ? 1e-3 * unit(rng) : 0, trial % 3 ? 1 : 0.99 + 0.01 * unit(rng));
        double q0 = trial % 4 == 0 ? 0.2 + 0.6 * unit(rng) : 0.5;
        double expected = hybrid_enumerated(alpha_sq, lo_sq, tau, d, q0);
        ASSERT_NEAR(hybrid(alpha_sq, lo_sq, tau, d, q0), expected, 1e-12)
            << "alpha^2=" << alpha_sq << " z^2=" << lo_sq << " tau=" << tau << " q0=" << q0 << " " << d.str();
    }
}

TEST(hybrid_error, reduces_to_kennedy_at_full_transmission) {
    for (double alpha_sq : {0.5, 1.0, 2.0}) {
        double expected = std::exp(-4 * alpha_sq) / 2;
        ASSERT_NEAR(hybrid(alpha_sq, 5, 1, detector(1)), expected, 1e-12);
        ASSERT_NEAR(hybrid(alpha_sq, 5, 1, DetectorModel::ideal()), expected, 1e-12);
    }
}

TEST(hybrid_error, reduces_to_homodyne_like_at_zero_transmission) {
    for (const auto &d : {DetectorModel::ideal(), detector(3, 0.7, 0, 0.998), detector(1)}) {
        for (double alpha_sq : {0.1, 1.0, 3.0}) {
            double a = std::sqrt(alpha_sq);
            double expected = homodyne_like_error(a, std::sqrt(5.0), d).p_err;
            ASSERT_NEAR(hybrid(alpha_sq, 5, 0, d), expected, 1e-12) << d.str();
        }
    }
}

TEST(hybrid_error, zero_transmission_with_dark_counts) {
    // The empty final detector still clicks with probability 1 - e^-nu, and the
    // equal-rate rule (n_th = 1) reads a click as the brighter hypothesis.
    for (const auto &d : {detector(3, 0.7, 1e-3, 0.998), detector(1, 1, 0.05)}) {
        double flip = -std::expm1(-d.dark_rate);
        for (double alpha_sq : {0.1, 1.0, 3.0}) {
            double hl = homodyne_like_error(std::sqrt(alpha_sq), std::sqrt(5.0), d).p_err;
            ASSERT_NEAR(hybrid(alpha_sq, 5, 0, d), hl + flip * (1 - 2 * hl), 1e-12) << d.str();
        }
    }
}

TEST(hybrid_error, reduces_to_dpnrm_at_full_transmission) {
    for (const auto &d : {detector(1, 1, 1e-3), detector(3, 0.7, 1e-3, 0.998), detector(5, 1, 0, 0.998)}) {
        for (double alpha_sq : {0.2, 1.0, 4.0}) {
            double expected = dpnrm_error(std::sqrt(alpha_sq), d).p_err;
            ASSERT_NEAR(hybrid(alpha_sq, 5, 1, d), expected, 1e-14 + 1e-12 * expected) << d.str();
        }
    }
}

TEST(hybrid_error, reports_branch_errors_and_threshold) {
    SignalConfig c{1, std::sqrt(5.0), 0.5, 0.5, 0.8};
    auto r = hybrid_error(c, detector(3, 1, 1e-3));
    ASSERT_NEAR(r.p_err, 0.5 * (r.p_err_given_0 + r.p_err_given_1), 1e-16);
    ASSERT_TRUE(r.n_th_used.has_value());
    ASSERT_EQ(r.tau_used, 0.8);
    ASSERT_FALSE(r.extension);
    ASSERT_TRUE(hybrid_error(c, detector(3, 0.7, 1e-3)).extension);
}

TEST(hybrid_error, rejects_invalid_configs) {
    ASSERT_THROW(hybrid(1, 5, 1.2, DetectorModel::ideal()), std::invalid_argument);
    ASSERT_THROW(hybrid(1, 5, -0.1, DetectorModel::ideal()), std::invalid_argument);
    SignalConfig bad_priors{1, 1, 0.6, 0.6, 0.5};
    ASSERT_THROW(hybrid_error(bad_priors, DetectorModel::ideal()), std::invalid_argument);
    ASSERT_THROW(hybrid(1, 5, 0.5, detector(3, 1.5)), std::invalid_argument);
}

TEST(hybrid_rules, negative_branch_flips_orientation) {
    SignalConfig c{1.5, 2, 0.5, 0.5, 0.9};
    auto rules = hybrid_rules(c, detector(3, 1, 1e-3));
    ASSERT_EQ(rules.nonnegative.n_th, rules.negative.n_th);
    ASSERT_EQ(rules.nonnegative.orientation, 1);
    ASSERT_EQ(rules.negative.orientation, 0);
}

TEST(dpnrm_error, matches_enumeration_oracle) {
    ASSERT_NEAR(dpnrm_error(1, detector(3, 1, 1e-3)).p_err, 0.009648416285619028, 1e-15);
    ASSERT_NEAR(dpnrm_error(std::sqrt(2.0), detector(2, 0.8, 0, 0.998)).p_err, 0.004025894480988515, 1e-15);
}

TEST(dpnrm_error, kennedy_for_on_off_detection) {
    for (double alpha_sq : {0.1, 1.0, 3.0}) {
        double a = std::sqrt(alpha_sq);
        ASSERT_NEAR(dpnrm_error(a, detector(1)).p_err, kennedy_error(a), 1e-15);
        ASSERT_NEAR(dpnrm_error(a, detector(1, 0.6)).p_err, kennedy_error(a, 0.6), 1e-15);
    }
}

TEST(dpnrm_error, needs_finite_resolution) {
    ASSERT_THROW(dpnrm_error(1, DetectorModel::ideal()), std::domain_error);
}

TEST(dpnrm_error, conditional_errors_average_to_total) {
    auto r = dpnrm_error(1.2, detector(3, 0.9, 1e-3, 0.998));
    ASSERT_NEAR(r.p_err, 0.5 * (r.p_err_given_0 + r.p_err_given_1), 1e-15);
}

TEST(dpnrm_asymptote, dark_count_plateau) {
    double nu = 1e-3;
    ASSERT_NEAR(dpnrm_asymptote(5, detector(1, 1, nu)), 4.997500833125042e-4, 1e-18);
    ASSERT_NEAR(dpnrm_asymptote(5, detector(2, 1, nu)), 2.498333958166701e-7, 1e-19);
    ASSERT_NEAR(dpnrm_asymptote(5, detector(3, 1, nu)), 8.327085832639038e-11, 1e-22);
    for (int m : {1, 2, 3}) {
        auto d = detector(m, 1, nu);
        double asymptote = dpnrm_asymptote(5, d);
        ASSERT_NEAR(dpnrm_error(5, d).p_err, asymptote, 1e-9);
    }
}

TEST(dpnrm_asymptote, visibility_plateau) {
    // PNR(1) with alpha^2 = 5 and xi = 0.998: (1 - e^{-0.02}) / 2.
    ASSERT_NEAR(dpnrm_asymptote(std::sqrt(5.0), detector(1, 1, 0, 0.998)), 9.900663346622349e-3, 1e-15);
}

TEST(is_extension, counts_active_imperfections) {
    ASSERT_FALSE(is_extension(DetectorModel::ideal()));
    ASSERT_FALSE(is_extension(detector(3, 0.7)));
    ASSERT_FALSE(is_extension(detector(3, 1, 1e-3)));
    ASSERT_TRUE(is_extension(detector(3, 0.7, 1e-3)));
    ASSERT_TRUE(is_extension(detector(3, 1, 1e-3, 0.998)));
}
