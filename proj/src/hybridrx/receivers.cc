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
#include <numbers>
#include <stdexcept>

namespace hybridrx {

namespace {

void check_amplitude(double alpha, const char *name) {
    if (!(alpha >= 0) || !std::isfinite(alpha)) {
        throw std::invalid_argument(std::string(name) + " must be finite and non-negative");
    }
}

void check_priors(double q0, double q1) {
    if (!(q0 >= 0 && q1 >= 0) || std::abs(q0 + q1 - 1) > 1e-12) {
        throw std::invalid_argument("priors must be non-negative and sum to 1");
    }
}

/// Probability that `rule` decides `label` when the detector sees `rate`.
double decide_probability(int label, const ThresholdRule &rule, double rate, Resolution resolution) {
    if (rule.orientation == label) {
        return pnr_upper_tail(rule.n_th, rate, resolution);
    }
    return pnr_lower_tail(rule.n_th, rate, resolution);
}

}  // namespace

void SignalConfig::validate() const {
    check_amplitude(alpha, "signal amplitude");
    check_amplitude(lo, "local oscillator amplitude");
    check_priors(q0, q1);
    if (!(tau >= 0 && tau <= 1)) {
        throw std::invalid_argument("transmissivity must lie in [0, 1]");
    }
}

bool is_extension(const DetectorModel &detector) {
    int active = (detector.efficiency < 1) + (detector.dark_rate > 0) + (detector.visibility < 1);
    return active > 1;
}

double helstrom_bound(double alpha, double q0, double q1) {
    check_amplitude(alpha, "signal amplitude");
    check_priors(q0, q1);
    double overlap = std::exp(-4 * alpha * alpha);
    return 0.5 * (1 - std::sqrt(1 - 4 * q0 * q1 * overlap));
}

double kennedy_error(double alpha, double efficiency) {
    check_amplitude(alpha, "signal amplitude");
    if (!(efficiency > 0 && efficiency <= 1)) {
        throw std::invalid_argument("detector efficiency must lie in (0, 1]");
    }
    return 0.5 * std::exp(-4 * efficiency * alpha * alpha);
}

double homodyne_sql(double alpha) {
    check_amplitude(alpha, "signal amplitude");
    return 0.5 * std::erfc(std::numbers::sqrt2 * alpha);
}

ReceiverResult homodyne_like_error(double alpha, double lo, const DetectorModel &detector) {
    check_amplitude(alpha, "signal amplitude");
    check_amplitude(lo, "local oscillator amplitude");
    detector.validate();
    double xi = detector.visibility;

    // "0" is |-alpha>: the constructive arm is dimmer, so a negative difference decides "0".
    auto [c0, d0] = homodyne_like_rates(-alpha, lo, xi);
    auto [c1, d1] = homodyne_like_rates(alpha, lo, xi);
    auto m0 = difference_sign_masses(c0, d0, detector);
    auto m1 = difference_sign_masses(c1, d1, detector);

    ReceiverResult result;
    result.tau_used = 0;
    result.p_err_given_0 = m0.positive + 0.5 * m0.zero;
    result.p_err_given_1 = m1.negative + 0.5 * m1.zero;
    result.p_err = 0.5 * (m1.negative + m0.positive) + 0.25 * (m0.zero + m1.zero);
    result.extension = is_extension(detector);
    return result;
}

std::pair<double, double> hybrid_final_rates(const SignalConfig &config, const DetectorModel &detector) {
    // Energy of the transmitted pulse times two: the displacement either cancels
    // it or doubles its amplitude, and imperfect visibility leaves 1 -/+ xi of it.
    double doubled = 2 * config.tau * config.alpha * config.alpha;
    double xi = detector.visibility;
    return {detector.count_rate(doubled * (1 - xi)), detector.count_rate(doubled * (1 + xi))};
}

HybridRules hybrid_rules(const SignalConfig &config, const DetectorModel &detector) {
    auto [dim, bright] = hybrid_final_rates(config, detector);
    if (config.equal_priors()) {
        // Same threshold on both branches; only the label claimed by n >= n_th flips.
        auto nonnegative = threshold_for_rates(dim, bright, detector.resolution);
        auto negative = nonnegative;
        negative.orientation = 1 - nonnegative.orientation;
        return {nonnegative, negative};
    }
    auto nonnegative = map_threshold({0, dim, config.q0}, {1, bright, config.q1}, detector.resolution);
    auto negative = map_threshold({0, bright, config.q0}, {1, dim, config.q1}, detector.resolution);
    return {nonnegative, negative};
}

ReceiverResult hybrid_error(const SignalConfig &config, const DetectorModel &detector) {
    config.validate();
    detector.validate();
    double xi = detector.visibility;
    double reflected = std::sqrt(1 - config.tau) * config.alpha;

    // The splitter flips the sign of the reflected amplitude: "0" (|-alpha>)
    // reaches the homodyne-like stage as |+sqrt(1 - tau) alpha>.
    auto [c0, d0] = homodyne_like_rates(reflected, config.lo, xi);
    auto [c1, d1] = homodyne_like_rates(-reflected, config.lo, xi);
    auto m0 = difference_sign_masses(c0, d0, detector);
    auto m1 = difference_sign_masses(c1, d1, detector);

    auto [dim, bright] = hybrid_final_rates(config, detector);
    auto rules = hybrid_rules(config, detector);
    Resolution res = detector.resolution;

    double err0 = m0.nonnegative() * decide_probability(1, rules.nonnegative, dim, res) +
                  m0.negative * decide_probability(1, rules.negative, bright, res);
    double err1 = m1.negative * decide_probability(0, rules.negative, dim, res) +
                  m1.nonnegative() * decide_probability(0, rules.nonnegative, bright, res);

    ReceiverResult result;
    result.tau_used = config.tau;
    result.n_th_used = rules.nonnegative.n_th;
    result.p_err_given_0 = err0;
    result.p_err_given_1 = err1;
    result.p_err = config.q0 * err0 + config.q1 * err1;
    result.extension = is_extension(detector) || !config.equal_priors();
    return result;
}

double hybrid_error_hd(double alpha, double tau) {
    check_amplitude(alpha, "signal amplitude");
    if (!(tau >= 0 && tau <= 1)) {
        throw std::invalid_argument("transmissivity must lie in [0, 1]");
    }
    return 0.5 * std::exp(-4 * tau * alpha * alpha) * std::erfc(std::sqrt(2 * (1 - tau)) * alpha);
}

ReceiverResult dpnrm_error(double alpha, const DetectorModel &detector) {
    check_amplitude(alpha, "signal amplitude");
    detector.validate();
    if (!detector.resolution.is_bounded()) {
        throw std::domain_error("the displacement-PNR receiver needs a finite resolution M");
    }
    SignalConfig full{alpha, 0, 0.5, 0.5, 1.0};
    auto [dim, bright] = hybrid_final_rates(full, detector);
    // The rate rule is the MAP rule for equal priors. Summing the two error
    // tails directly keeps full relative precision deep in the plateau, where
    // 1 - P(correct) would cancel.
    auto rule = threshold_for_rates(dim, bright, detector.resolution);

    ReceiverResult result;
    result.tau_used = 1;
    result.n_th_used = rule.n_th;
    result.p_err_given_0 = decide_probability(1, rule, dim, detector.resolution);
    result.p_err_given_1 = decide_probability(0, rule, bright, detector.resolution);
    result.p_err = 0.5 * (result.p_err_given_0 + result.p_err_given_1);
    result.extension = is_extension(detector);
    return result;
}

double dpnrm_asymptote(double alpha, const DetectorModel &detector) {
    check_amplitude(alpha, "signal amplitude");
    detector.validate();
    int m = detector.resolution.max_count();
    double nulled = detector.count_rate(2 * alpha * alpha * (1 - detector.visibility));
    return 0.5 * pnr_outcome_pmf(m, nulled, detector.resolution);
}

}  // namespace hybridrx
