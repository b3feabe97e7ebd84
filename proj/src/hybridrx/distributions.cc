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

#include "hybridrx/distributions.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/math/distributions/poisson.hpp>

#include "hybridrx/numerics.h"

namespace hybridrx {

namespace {

void check_rate(double rate) {
    if (!(rate >= 0) || !std::isfinite(rate)) {
        std::stringstream ss;
        ss << "Poisson rate must be finite and non-negative, got " << rate;
        throw std::domain_error(ss.str());
    }
}

/// Poisson masses for n in [first, first + size) built by ratio recurrences
/// outward from the mode, so no term is computed from an underflowed neighbour.
struct PoissonBlock {
    int64_t first;
    std::vector<double> probs;
};

PoissonBlock poisson_range(double rate, int64_t first, int64_t last) {
    PoissonBlock block{first, std::vector<double>(static_cast<size_t>(last - first + 1), 0.0)};
    if (rate == 0) {
        if (first <= 0 && 0 <= last) {
            block.probs[static_cast<size_t>(-first)] = 1.0;
        }
        return block;
    }
    auto mode = std::clamp(static_cast<int64_t>(std::floor(rate)), first, last);
    double p = poisson_pmf(mode, rate);
    block.probs[static_cast<size_t>(mode - first)] = p;
    for (int64_t k = mode + 1; k <= last && p > 0; k++) {
        p *= rate / static_cast<double>(k);
        block.probs[static_cast<size_t>(k - first)] = p;
    }
    p = block.probs[static_cast<size_t>(mode - first)];
    for (int64_t k = mode - 1; k >= first && p > 0; k--) {
        p *= static_cast<double>(k + 1) / rate;
        block.probs[static_cast<size_t>(k - first)] = p;
    }
    return block;
}

/// Smallest window [first, last] outside which each Poisson tail holds less than `cutoff`.
std::pair<int64_t, int64_t> poisson_window(double rate, double cutoff) {
    if (rate == 0) {
        return {0, 0};
    }
    auto mode = static_cast<int64_t>(std::floor(rate));
    double p_mode = poisson_pmf(mode, rate);

    int64_t last = mode;
    double p = p_mode;
    while (true) {
        double next = p * rate / static_cast<double>(last + 1);
        auto k = static_cast<double>(last + 1);
        // sum_{j >= k} p_j <= p_k (k + 1) / (k + 1 - rate) once k + 1 > rate.
        if (k + 1 > rate && next * (k + 1) / (k + 1 - rate) < cutoff) {
            break;
        }
        p = next;
        last++;
    }

    int64_t first = mode;
    p = p_mode;
    while (first > 0) {
        double prev = p * static_cast<double>(first) / rate;
        auto k = static_cast<double>(first - 1);
        // sum_{j <= k} p_j <= p_k rate / (rate - k) for k < rate.
        if (k < rate && prev * rate / (rate - k) < cutoff) {
            break;
        }
        p = prev;
        first--;
    }
    return {first, last};
}

/// P(N >= n) for N ~ Poisson(rate), n >= 1.
double poisson_upper_tail(int64_t n, double rate) {
    if (n <= 0) {
        return 1.0;
    }
    if (rate == 0) {
        return 0.0;
    }
    if (static_cast<double>(n) <= rate) {
        // Tail holds at least about half the mass; the complement is well conditioned.
        auto head = poisson_range(rate, 0, n - 1);
        CompensatedSum s;
        for (double v : head.probs) {
            s += v;
        }
        return std::max(0.0, 1.0 - s.value());
    }
    CompensatedSum s;
    double p = poisson_pmf(n, rate);
    for (int64_t k = n; p > 0; k++) {
        s += p;
        if (p < s.value() * 1e-18) {
            break;
        }
        p *= rate / static_cast<double>(k + 1);
    }
    return std::min(1.0, s.value());
}

}  // namespace

Resolution::Resolution(int max_count) : max_count_(max_count) {
    if (max_count < 1) {
        throw std::invalid_argument("PNR resolution must be at least 1, got " + std::to_string(max_count));
    }
}

int Resolution::max_count() const {
    if (!is_bounded()) {
        throw std::domain_error("unbounded resolution has no maximum count");
    }
    return max_count_;
}

std::string Resolution::str() const {
    return is_bounded() ? std::to_string(max_count_) : std::string("inf");
}

void DetectorModel::validate() const {
    if (!(efficiency > 0 && efficiency <= 1)) {
        throw std::invalid_argument("detector efficiency must lie in (0, 1]");
    }
    if (!(dark_rate >= 0) || !std::isfinite(dark_rate)) {
        throw std::invalid_argument("dark count rate must be finite and non-negative");
    }
    if (!(visibility > 0 && visibility <= 1)) {
        throw std::invalid_argument("visibility must lie in (0, 1]");
    }
}

std::string DetectorModel::str() const {
    std::stringstream ss;
    ss << "M=" << resolution.str() << " eta=" << efficiency << " nu=" << dark_rate << " xi=" << visibility;
    return ss.str();
}

CountDistribution::CountDistribution(int64_t first, std::vector<double> probs) : first_(first), probs_(std::move(probs)) {
    if (probs_.empty()) {
        throw std::invalid_argument("a count distribution needs a non-empty support");
    }
}

double CountDistribution::operator()(int64_t k) const {
    if (k < first_ || k > last()) {
        return 0.0;
    }
    return probs_[static_cast<size_t>(k - first_)];
}

double CountDistribution::total() const {
    CompensatedSum s;
    for (double p : probs_) {
        s += p;
    }
    return s.value();
}

double CountDistribution::mean() const {
    CompensatedSum s;
    for (size_t i = 0; i < probs_.size(); i++) {
        s += static_cast<double>(first_ + static_cast<int64_t>(i)) * probs_[i];
    }
    return s.value();
}

double CountDistribution::variance() const {
    double mu = mean();
    CompensatedSum s;
    for (size_t i = 0; i < probs_.size(); i++) {
        double d = static_cast<double>(first_ + static_cast<int64_t>(i)) - mu;
        s += d * d * probs_[i];
    }
    return s.value();
}

double poisson_pmf(int64_t n, double rate) {
    check_rate(rate);
    if (n < 0) {
        return 0.0;
    }
    if (rate == 0) {
        return n == 0 ? 1.0 : 0.0;
    }
    return boost::math::pdf(boost::math::poisson_distribution<double>(rate), static_cast<double>(n));
}

double pnr_outcome_pmf(int64_t n, double rate, Resolution resolution) {
    check_rate(rate);
    if (n < 0 || (resolution.is_bounded() && n > resolution.max_count())) {
        std::stringstream ss;
        ss << "outcome " << n << " is outside the range of a PNR(" << resolution.str() << ") detector";
        throw std::domain_error(ss.str());
    }
    if (resolution.is_bounded() && n == resolution.max_count()) {
        return poisson_upper_tail(n, rate);
    }
    return poisson_pmf(n, rate);
}

double pnr_upper_tail(int64_t n, double rate, Resolution resolution) {
    check_rate(rate);
    if (resolution.is_bounded() && n > resolution.max_count()) {
        return 0.0;
    }
    return poisson_upper_tail(n, rate);
}

double pnr_lower_tail(int64_t n, double rate, Resolution resolution) {
    check_rate(rate);
    if (n <= 0) {
        return 0.0;
    }
    if (resolution.is_bounded() && n > resolution.max_count()) {
        return 1.0;
    }
    if (static_cast<double>(n - 1) > rate) {
        return std::max(0.0, 1.0 - poisson_upper_tail(n, rate));
    }
    auto head = poisson_range(rate, 0, n - 1);
    CompensatedSum s;
    for (double v : head.probs) {
        s += v;
    }
    return std::min(1.0, s.value());
}

/// As pnr_distribution, with unbounded counts cut where each tail drops below `cutoff`.
static CountDistribution pnr_distribution_cut(double rate, Resolution resolution, double cutoff) {
    check_rate(rate);
    if (!resolution.is_bounded()) {
        auto [first, last] = poisson_window(rate, cutoff);
        auto block = poisson_range(rate, first, last);
        return CountDistribution(block.first, std::move(block.probs));
    }
    int64_t m = resolution.max_count();
    std::vector<double> probs(static_cast<size_t>(m + 1), 0.0);
    if (m > 1 || rate > 0) {
        auto block = poisson_range(rate, 0, m - 1);
        std::copy(block.probs.begin(), block.probs.end(), probs.begin());
    } else {
        probs[0] = 1.0;
    }
    probs[static_cast<size_t>(m)] = poisson_upper_tail(m, rate);
    return CountDistribution(0, std::move(probs));
}

CountDistribution pnr_distribution(double rate, Resolution resolution) {
    return pnr_distribution_cut(rate, resolution, kTailCutoff);
}

std::pair<double, double> homodyne_like_rates(double signal, double lo, double visibility) {
    double base = signal * signal + lo * lo;
    double cross = 2 * visibility * lo * signal;
    // Clamp rounding residue when the destructive arm is exactly dark.
    return {std::max(0.0, (base + cross) / 2), std::max(0.0, (base - cross) / 2)};
}

CountDistribution difference_pmf(double mu_c, double mu_d, const DetectorModel &detector) {
    detector.validate();
    auto c = pnr_distribution(detector.count_rate(mu_c), detector.resolution);
    auto d = pnr_distribution(detector.count_rate(mu_d), detector.resolution);

    int64_t first = c.first() - d.last();
    int64_t last = c.last() - d.first();
    std::vector<double> probs(static_cast<size_t>(last - first + 1), 0.0);
    auto pc = c.probs();
    auto pd = d.probs();
    for (size_t i = 0; i < pc.size(); i++) {
        for (size_t j = 0; j < pd.size(); j++) {
            int64_t delta = c.first() + static_cast<int64_t>(i) - d.first() - static_cast<int64_t>(j);
            probs[static_cast<size_t>(delta - first)] += pc[i] * pd[j];
        }
    }
    return CountDistribution(first, std::move(probs));
}

SignMasses difference_sign_masses(double mu_c, double mu_d, const DetectorModel &detector) {
    detector.validate();
    // The smaller sign mass can lie far below kTailCutoff (a strong local
    // oscillator makes it astronomically small), so keep every representable term.
    auto c = pnr_distribution_cut(detector.count_rate(mu_c), detector.resolution, kDeepTailCutoff);
    auto d = pnr_distribution_cut(detector.count_rate(mu_d), detector.resolution, kDeepTailCutoff);
    auto pc = c.probs();

    // below[i] = P(c < first + i), above[i] = P(c > first + i); each accumulated
    // from its own small tail inward.
    std::vector<double> below(pc.size() + 1, 0.0);
    std::vector<double> above(pc.size() + 1, 0.0);
    for (size_t i = 0; i < pc.size(); i++) {
        below[i + 1] = below[i] + pc[i];
    }
    for (size_t i = pc.size(); i-- > 1;) {
        above[i - 1] = above[i] + pc[i];
    }

    CompensatedSum negative;
    CompensatedSum zero;
    CompensatedSum positive;
    for (int64_t m = d.first(); m <= d.last(); m++) {
        double w = d(m);
        if (w == 0) {
            continue;
        }
        int64_t idx = m - c.first();
        double p_below;
        double p_equal;
        double p_above;
        if (idx < 0) {
            p_below = 0;
            p_equal = 0;
            p_above = below[pc.size()];
        } else if (idx >= static_cast<int64_t>(pc.size())) {
            p_below = below[pc.size()];
            p_equal = 0;
            p_above = 0;
        } else {
            auto u = static_cast<size_t>(idx);
            p_below = below[u];
            p_equal = pc[u];
            p_above = above[u];
        }
        negative += w * p_below;
        zero += w * p_equal;
        positive += w * p_above;
    }
    return {negative.value(), zero.value(), positive.value()};
}

double skellam_pmf(int64_t delta, double signal, double lo) {
    if (!(lo >= 0)) {
        throw std::invalid_argument("local oscillator amplitude must be non-negative");
    }
    auto [mu_c, mu_d] = homodyne_like_rates(signal, lo);
    return difference_pmf(mu_c, mu_d, DetectorModel::ideal())(delta);
}

double homodyne_pdf(double x, double signal) {
    double u = x - std::numbers::sqrt2 * signal;
    return std::exp(-u * u) * std::numbers::inv_sqrtpi;
}

}  // namespace hybridrx
