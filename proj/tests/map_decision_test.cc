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


#include "hybridrx/map_decision.h"

#include <cmath>

#include "gtest/gtest.h"

using namespace hybridrx;

namespace {

BinaryHypothesis h(int label, double rate, double prior = 0.5) {
    return {label, rate, prior};
}

/// Rates of the nulled and doubled hypotheses after a displacement by alpha.
std::pair<double, double> displaced_rates(double alpha_sq, double eta, double nu, double xi) {
    return {eta * 2 * alpha_sq * (1 - xi) + nu, eta * 2 * alpha_sq * (1 + xi) + nu};
}

}  // namespace

TEST(posterior, equal_likelihoods_give_equal_posteriors) {
    auto [p0, p1] = posterior(2, h(0, 1.5), h(1, 1.5), Resolution(3));
    ASSERT_EQ(p0, 0.5);
    ASSERT_EQ(p1, 0.5);
}

TEST(posterior, vacuum_count_reference_value) {
    // Rates (0, 4 alpha^2) with alpha^2 = 1: p(h0 | n = 0) = 1 / (1 + e^-4).
    auto [p0, p1] = posterior(0, h(0, 0), h(1, 4), Resolution::unbounded());
    ASSERT_NEAR(p0, 0.98201379003790845, 1e-15);
    ASSERT_NEAR(p1, 1 - 0.98201379003790845, 1e-15);
}

TEST(posterior, sums_to_one) {
    for (int64_t n = 0; n <= 5; n++) {
        auto [p0, p1] = posterior(n, h(0, 0.3, 0.3), h(1, 2.7, 0.7), Resolution(5));
        ASSERT_NEAR(p0 + p1, 1, 1e-15);
    }
}

TEST(posterior, undefined_when_outcome_impossible) {
    ASSERT_THROW(posterior(1, h(0, 0), h(1, 0), Resolution(3)), std::domain_error);
}

TEST(posterior, rejects_bad_hypotheses) {
    ASSERT_THROW(posterior(0, h(0, 1), h(0, 2), Resolution(3)), std::invalid_argument);
    ASSERT_THROW(posterior(0, h(0, 1, 0.6), h(1, 2, 0.6), Resolution(3)), std::invalid_argument);
}

TEST(correct_probability, identical_rates_give_one_half) {
    ASSERT_NEAR(correct_probability(h(0, 2), h(1, 2), Resolution(3)), 0.5, 1e-15);
    ASSERT_NEAR(correct_probability(h(0, 2), h(1, 2), Resolution::unbounded()), 0.5, 1e-14);
}

TEST(correct_probability, kennedy_reduction) {
    for (double alpha_sq : {0.25, 1.0, 3.0}) {
        double pc = correct_probability(h(0, 0), h(1, 4 * alpha_sq), Resolution::unbounded());
        ASSERT_NEAR(pc, 1 - std::exp(-4 * alpha_sq) / 2, 1e-14);
        ASSERT_NEAR(correct_probability(h(0, 0), h(1, 4 * alpha_sq), Resolution(1)), pc, 1e-14);
    }
}

TEST(threshold_dark, reference_values) {
    auto r = threshold_dark(1, 1e-3, Resolution(3));
    ASSERT_EQ(r.n_th, 1);  // ceil(0.48226)
    ASSERT_FALSE(r.degenerate);
    ASSERT_EQ(threshold_dark(5, 1e-3, Resolution(3)).n_th, 3);
    ASSERT_EQ(threshold_dark(std::sqrt(10.0), 1e-3, Resolution(5)).n_th, 4);  // ceil(3.77477), below the cap
    for (double alpha_sq : {0.1, 1.0, 10.0, 100.0}) {
        ASSERT_EQ(threshold_dark(std::sqrt(alpha_sq), 1e-3, Resolution(1)).n_th, 1);
    }
}

TEST(threshold_dark, zero_dark_rate_is_degenerate) {
    auto r = threshold_dark(1, 0, Resolution(3));
    ASSERT_EQ(r.n_th, 1);
    ASSERT_TRUE(r.degenerate);
}

TEST(threshold_visibility, reference_values) {
    ASSERT_EQ(threshold_visibility(1, 0.998, Resolution(3)).n_th, 1);                // ceil(0.57798)
    ASSERT_EQ(threshold_visibility(std::sqrt(10.0), 0.998, Resolution(3)).n_th, 3);  // min(ceil(5.7798), 3)
    ASSERT_EQ(threshold_visibility(std::sqrt(10.0), 0.998, Resolution::unbounded()).n_th, 6);
    auto exact = threshold_visibility(1, 1, Resolution(3));
    ASSERT_EQ(exact.n_th, 1);
    ASSERT_TRUE(exact.degenerate);
    ASSERT_THROW(threshold_visibility(1, 0, Resolution(3)), std::domain_error);
}

TEST(threshold_general, reference_values) {
    ASSERT_EQ(threshold_general(1, 0.5).n_th, 1);  // ceil(2 / 2.19722)
    ASSERT_EQ(threshold_general(2, 1.9).n_th, 3);  // ceil(15.2 / 7.32647)
    auto none = threshold_general(1, 0);
    ASSERT_EQ(none.n_th, 1);
    ASSERT_TRUE(none.degenerate);
    auto nulled = threshold_general(1, 1);
    ASSERT_EQ(nulled.n_th, 1);
    ASSERT_TRUE(nulled.degenerate);
}

TEST(threshold_for_rates, orientation_follows_the_brighter_rate) {
    auto up = threshold_for_rates(0.5, 4, Resolution(3));
    auto down = threshold_for_rates(4, 0.5, Resolution(3));
    ASSERT_EQ(up.n_th, down.n_th);
    ASSERT_EQ(up.orientation, 1);
    ASSERT_EQ(down.orientation, 0);
    ASSERT_EQ(up.decide(0), 0);
    ASSERT_EQ(down.decide(0), 1);
}

TEST(threshold_for_rates, nondecreasing_in_energy_and_capped) {
    for (int m : {1, 2, 3, 5}) {
        for (double nu : {1e-4, 1e-3}) {
            int64_t previous = 0;
            for (double alpha_sq = 0.01; alpha_sq < 60; alpha_sq *= 1.1) {
                auto r = threshold_dark(std::sqrt(alpha_sq), nu, Resolution(m));
                ASSERT_GE(r.n_th, previous);
                ASSERT_LE(r.n_th, m);
                ASSERT_GE(r.n_th, 1);
                previous = r.n_th;
            }
            ASSERT_EQ(previous, m);
        }
    }
}

// Threshold rule and explicit max-posterior sum agree exactly over the dark count,
// visibility and mixed-imperfection settings.
TEST(map_equivalence, threshold_matches_max_posterior_exactly) {
    struct Noise {
        double eta;
        double nu;
        double xi;
    };
    std::vector<Noise> settings;
    for (double nu : {1e-4, 1e-3}) {
        settings.push_back({1, nu, 1});
    }
    for (double xi : {0.99, 0.998, 0.9999}) {
        settings.push_back({1, 0, xi});
    }
    settings.push_back({0.7, 1e-3, 0.998});
    int checked = 0;
    for (const auto &s : settings) {
        for (double alpha_sq : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
            for (int m : {1, 2, 3, 5}) {
                auto [dim, bright] = displaced_rates(alpha_sq, s.eta, s.nu, s.xi);
                auto h0 = h(0, dim);
                auto h1 = h(1, bright);
                auto rule = threshold_for_rates(dim, bright, Resolution(m));
                double by_rule = threshold_correct_probability(h0, h1, rule, Resolution(m));
                double by_max = correct_probability(h0, h1, Resolution(m));
                ASSERT_EQ(by_rule, by_max) << "alpha^2=" << alpha_sq << " M=" << m << " nu=" << s.nu
                                           << " xi=" << s.xi;
                checked++;
            }
        }
    }
    ASSERT_EQ(checked, 6 * 6 * 4);
}

TEST(map_equivalence, posterior_argmax_equals_rule_decision) {
    for (double nu : {1e-4, 1e-3}) {
        for (double alpha_sq : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
            for (int m : {1, 2, 3, 5}) {
                auto [dim, bright] = displaced_rates(alpha_sq, 1, nu, 1);
                auto rule = threshold_for_rates(dim, bright, Resolution(m));
                for (int64_t n = 0; n <= m; n++) {
                    auto [p0, p1] = posterior(n, h(0, dim), h(1, bright), Resolution(m));
                    int argmax = p1 >= p0 ? 1 : 0;
                    ASSERT_EQ(rule.decide(n), argmax) << "alpha^2=" << alpha_sq << " M=" << m << " n=" << n;
                }
            }
        }
    }
}

TEST(map_threshold, equal_priors_match_rate_rule) {
    auto a = map_threshold(h(0, 0.01), h(1, 8), Resolution(5));
    auto b = threshold_for_rates(0.01, 8, Resolution(5));
    ASSERT_EQ(a.n_th, b.n_th);
    ASSERT_EQ(a.orientation, 1);
    // Labels swapped: the bright hypothesis is now "0".
    auto c = map_threshold(h(0, 8), h(1, 0.01), Resolution(5));
    ASSERT_EQ(c.n_th, b.n_th);
    ASSERT_EQ(c.orientation, 0);
}

TEST(map_threshold, unequal_priors_are_map) {
    for (double q1 : {0.1, 0.3, 0.7, 0.95}) {
        for (int m : {0, 1, 3, 6}) {
            Resolution res = m == 0 ? Resolution::unbounded() : Resolution(m);
            for (double dim : {0.0, 1e-3, 0.4}) {
                auto h0 = h(0, dim, 1 - q1);
                auto h1 = h(1, 3.5, q1);
                auto rule = map_threshold(h0, h1, res);
                ASSERT_EQ(threshold_correct_probability(h0, h1, rule, res), correct_probability(h0, h1, res))
                    << "q1=" << q1 << " M=" << m << " dim=" << dim;
            }
        }
    }
}

TEST(map_threshold, equal_rates_follow_the_prior) {
    auto favour_one = map_threshold(h(0, 2, 0.3), h(1, 2, 0.7), Resolution(3));
    for (int64_t n = 0; n <= 3; n++) {
        ASSERT_EQ(favour_one.decide(n), 1);
    }
    auto favour_zero = map_threshold(h(0, 2, 0.7), h(1, 2, 0.3), Resolution(3));
    for (int64_t n = 0; n <= 3; n++) {
        ASSERT_EQ(favour_zero.decide(n), 0);
    }
}
