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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hybridrx {

namespace {

void check_pair(const BinaryHypothesis &h0, const BinaryHypothesis &h1) {
    if (h0.label + h1.label != 1 || h0.label * h1.label != 0) {
        throw std::invalid_argument("hypotheses must carry the labels 0 and 1");
    }
    if (!(h0.prior >= 0 && h1.prior >= 0) || std::abs(h0.prior + h1.prior - 1) > 1e-12) {
        throw std::invalid_argument("hypothesis priors must be non-negative and sum to 1");
    }
}

/// Joint outcome range covering both likelihoods.
std::pair<int64_t, int64_t> outcome_range(
    const CountDistribution &a, const CountDistribution &b) {
    return {std::min(a.first(), b.first()), std::max(a.last(), b.last())};
}

}  // namespace

std::pair<double, double> posterior(
    int64_t n, const BinaryHypothesis &h0, const BinaryHypothesis &h1, Resolution resolution) {
    check_pair(h0, h1);
    double w0 = h0.prior * pnr_outcome_pmf(n, h0.count_rate, resolution);
    double w1 = h1.prior * pnr_outcome_pmf(n, h1.count_rate, resolution);
    double evidence = w0 + w1;
    if (!(evidence > 0)) {
        throw std::domain_error("posterior undefined: outcome " + std::to_string(n) + " has zero probability");
    }
    return {w0 / evidence, w1 / evidence};
}

double correct_probability(const BinaryHypothesis &h0, const BinaryHypothesis &h1, Resolution resolution) {
    check_pair(h0, h1);
    auto p0 = pnr_distribution(h0.count_rate, resolution);
    auto p1 = pnr_distribution(h1.count_rate, resolution);
    auto [first, last] = outcome_range(p0, p1);
    double total = 0;
    for (int64_t n = first; n <= last; n++) {
        total += std::max(h0.prior * p0(n), h1.prior * p1(n));
    }
    return total;
}

double threshold_correct_probability(
    const BinaryHypothesis &h0, const BinaryHypothesis &h1, const ThresholdRule &rule, Resolution resolution) {
    check_pair(h0, h1);
    auto p0 = pnr_distribution(h0.count_rate, resolution);
    auto p1 = pnr_distribution(h1.count_rate, resolution);
    auto [first, last] = outcome_range(p0, p1);
    double total = 0;
    for (int64_t n = first; n <= last; n++) {
        total += rule.decide(n) == h0.label ? h0.prior * p0(n) : h1.prior * p1(n);
    }
    return total;
}

ThresholdRule threshold_for_rates(double dim_rate, double bright_rate, Resolution resolution) {
    if (!(dim_rate >= 0 && bright_rate >= 0)) {
        throw std::domain_error("count rates must be non-negative");
    }
    ThresholdRule rule;
    rule.orientation = 1;
    if (dim_rate > bright_rate) {
        std::swap(dim_rate, bright_rate);
        rule.orientation = 0;
    }
    if (dim_rate == 0 || dim_rate == bright_rate) {
        rule.n_th = 1;
        rule.degenerate = true;
        return rule;
    }
    // Logarithmic mean of the two rates; always lies strictly between them.
    double x = (bright_rate - dim_rate) / std::log1p((bright_rate - dim_rate) / dim_rate);
    auto n_th = static_cast<int64_t>(std::ceil(x));
    n_th = std::max<int64_t>(n_th, 1);
    if (resolution.is_bounded()) {
        n_th = std::min<int64_t>(n_th, resolution.max_count());
    }
    rule.n_th = n_th;
    return rule;
}

ThresholdRule map_threshold(const BinaryHypothesis &h0, const BinaryHypothesis &h1, Resolution resolution) {
    check_pair(h0, h1);
    if (h0.prior == h1.prior) {
        auto rule = threshold_for_rates(h0.count_rate, h1.count_rate, resolution);
        // threshold_for_rates orients toward label 1 when h1 is the brighter one.
        if (h0.label == 1) {
            rule.orientation = 1 - rule.orientation;
        }
        return rule;
    }

    const BinaryHypothesis &bright = h1.count_rate >= h0.count_rate ? h1 : h0;
    const BinaryHypothesis &dim = h1.count_rate >= h0.count_rate ? h0 : h1;
    ThresholdRule rule;
    rule.orientation = bright.label;
    rule.degenerate = dim.count_rate == 0 || dim.count_rate == bright.count_rate;

    if (dim.count_rate == bright.count_rate) {
        // Indistinguishable likelihoods: the prior alone decides every outcome.
        int64_t never = resolution.is_bounded() ? resolution.max_count() + 1 : std::numeric_limits<int64_t>::max();
        rule.n_th = bright.prior >= dim.prior ? 0 : never;
        return rule;
    }
    if (!resolution.is_bounded() && dim.count_rate > 0 && dim.count_rate < bright.count_rate) {
        double log_ratio = std::log(bright.count_rate / dim.count_rate);
        double x = (bright.count_rate - dim.count_rate + std::log(dim.prior / bright.prior)) / log_ratio;
        rule.n_th = std::max<int64_t>(0, static_cast<int64_t>(std::ceil(x)));
        return rule;
    }

    // Monotone likelihood ratio: the outcomes favouring the bright hypothesis form
    // an upper set, so the first one found fixes the threshold.
    int64_t limit = resolution.is_bounded() ? resolution.max_count() : 1;
    for (int64_t n = 0; n <= limit; n++) {
        double wb = bright.prior * pnr_outcome_pmf(n, bright.count_rate, resolution);
        double wd = dim.prior * pnr_outcome_pmf(n, dim.count_rate, resolution);
        if (wb >= wd && (wb > 0 || n == limit)) {
            rule.n_th = n;
            return rule;
        }
    }
    rule.n_th = limit + 1;
    return rule;
}

ThresholdRule threshold_dark(double alpha, double dark_rate, Resolution resolution) {
    if (!(dark_rate >= 0)) {
        throw std::domain_error("dark count rate must be non-negative");
    }
    return threshold_for_rates(dark_rate, 4 * alpha * alpha + dark_rate, resolution);
}

ThresholdRule threshold_visibility(double alpha, double visibility, Resolution resolution) {
    if (!(visibility > 0 && visibility <= 1)) {
        throw std::domain_error("visibility must lie in (0, 1]");
    }
    double energy = 2 * alpha * alpha;
    return threshold_for_rates(energy * (1 - visibility), energy * (1 + visibility), resolution);
}

ThresholdRule threshold_general(double alpha, double beta) {
    double minus = (alpha - beta) * (alpha - beta);
    double plus = (alpha + beta) * (alpha + beta);
    return threshold_for_rates(minus, plus, Resolution::unbounded());
}

}  // namespace hybridrx
