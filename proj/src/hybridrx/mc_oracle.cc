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

#include "hybridrx/mc_oracle.h"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include "hybridrx/optimizer.h"

namespace hybridrx {

namespace {

uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

int64_t draw_poisson(double mean, TrialRng &rng) {
    if (mean <= 0) {
        return 0;
    }
    std::poisson_distribution<int64_t> dist(mean);
    return dist(rng);
}

void check_trials(int64_t trials, const DetectorModel &detector) {
    if (trials < kMinTrials) {
        throw std::invalid_argument("Monte Carlo needs at least " + std::to_string(kMinTrials) + " trials");
    }
    detector.validate();
}

/// Runs `trial(rng) -> bool error` for every trial index and counts errors.
/// Trials are split into contiguous blocks per thread; the integer reduction
/// makes the result independent of the split.
template <typename TrialFn>
McEstimate run_trials(int64_t trials, uint64_t seed, int threads, const TrialFn &trial) {
    threads = std::max(1, threads);
    std::vector<int64_t> errors(static_cast<size_t>(threads), 0);
    auto work = [&](int t) {
        int64_t begin = trials * t / threads;
        int64_t end = trials * (t + 1) / threads;
        int64_t count = 0;
        for (int64_t i = begin; i < end; i++) {
            TrialRng rng(seed, static_cast<uint64_t>(i));
            count += trial(rng) ? 1 : 0;
        }
        errors[static_cast<size_t>(t)] = count;
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; t++) {
            pool.emplace_back(work, t);
        }
    }

    McEstimate e;
    e.trials = trials;
    e.seed = seed;
    for (int64_t c : errors) {
        e.errors += c;
    }
    e.p_err_hat = static_cast<double>(e.errors) / static_cast<double>(trials);
    e.std_err = std::sqrt(e.p_err_hat * (1 - e.p_err_hat) / static_cast<double>(trials));
    return e;
}

int draw_hypothesis(double q0, TrialRng &rng) {
    return rng.uniform() < q0 ? 0 : 1;
}

/// Count difference of the two homodyne-like arms for a real signal amplitude.
int64_t homodyne_like_difference(double signal, double lo, const DetectorModel &detector, TrialRng &rng) {
    double xi = detector.visibility;
    double mismatched = (1 - xi * xi) * signal * signal / 2;
    int64_t c = sample_detector((xi * signal + lo) / std::numbers::sqrt2, mismatched, detector, rng);
    int64_t d = sample_detector((xi * signal - lo) / std::numbers::sqrt2, mismatched, detector, rng);
    return c - d;
}

/// P(X <= k) and P(X >= k) for X ~ Poisson(mean).
std::pair<double, double> poisson_tails(double mean, int64_t k) {
    double below = 0;
    double below_exclusive = 0;
    for (int64_t j = 0; j <= k; j++) {
        double p = std::exp(static_cast<double>(j) * std::log(mean) - mean - std::lgamma(static_cast<double>(j) + 1));
        below += p;
        if (j < k) {
            below_exclusive += p;
        }
    }
    return {std::min(1.0, below), std::max(0.0, 1 - below_exclusive)};
}

}  // namespace

TrialRng::TrialRng(uint64_t seed, uint64_t trial)
    : state_(mix64(seed ^ mix64(trial + 0x632be59bd9b4e019ULL))) {
}

TrialRng::result_type TrialRng::operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
}

double TrialRng::uniform() {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

int64_t sample_detector(double matched_amplitude, double mismatched_energy, const DetectorModel &detector, TrialRng &rng) {
    double eta = detector.efficiency;
    int64_t n = draw_poisson(eta * matched_amplitude * matched_amplitude, rng);
    n += draw_poisson(eta * mismatched_energy, rng);
    n += draw_poisson(detector.dark_rate, rng);
    if (detector.resolution.is_bounded()) {
        n = std::min<int64_t>(n, detector.resolution.max_count());
    }
    return n;
}

TrialOutcome hybrid_trial(
    const SignalConfig &config, const DetectorModel &detector, const HybridRules &rules, TrialRng &rng) {
    TrialOutcome out{};
    out.sent = draw_hypothesis(config.q0, rng);
    double amplitude = out.sent == 0 ? -config.alpha : config.alpha;
    double transmitted = std::sqrt(config.tau) * amplitude;
    double reflected = -std::sqrt(1 - config.tau) * amplitude;

    out.delta = homodyne_like_difference(reflected, config.lo, detector, rng);

    double xi = detector.visibility;
    double displacement = (out.delta >= 0 ? 1 : -1) * std::sqrt(config.tau) * config.alpha;
    out.final_count = sample_detector(
        xi * transmitted + displacement, (1 - xi * xi) * transmitted * transmitted, detector, rng);

    const ThresholdRule &rule = out.delta >= 0 ? rules.nonnegative : rules.negative;
    out.decided = rule.decide(out.final_count);
    return out;
}

McEstimate simulate_hybrid(
    const SignalConfig &config, const DetectorModel &detector, int64_t trials, uint64_t seed, int threads) {
    check_trials(trials, detector);
    config.validate();
    auto rules = hybrid_rules(config, detector);
    return run_trials(trials, seed, threads, [&](TrialRng &rng) {
        auto out = hybrid_trial(config, detector, rules, rng);
        return out.decided != out.sent;
    });
}

McEstimate simulate_dpnrm(double alpha, const DetectorModel &detector, int64_t trials, uint64_t seed, int threads) {
    check_trials(trials, detector);
    if (!detector.resolution.is_bounded()) {
        throw std::domain_error("the displacement-PNR receiver needs a finite resolution M");
    }
    SignalConfig full{alpha, 0, 0.5, 0.5, 1.0};
    full.validate();
    auto [dim, bright] = hybrid_final_rates(full, detector);
    auto rule = threshold_for_rates(dim, bright, detector.resolution);
    double xi = detector.visibility;
    return run_trials(trials, seed, threads, [&](TrialRng &rng) {
        int sent = draw_hypothesis(0.5, rng);
        double amplitude = sent == 0 ? -alpha : alpha;
        int64_t n = sample_detector(xi * amplitude + alpha, (1 - xi * xi) * amplitude * amplitude, detector, rng);
        return rule.decide(n) != sent;
    });
}

McEstimate simulate_homodyne_like(
    double alpha, double lo, const DetectorModel &detector, int64_t trials, uint64_t seed, int threads) {
    check_trials(trials, detector);
    if (!(alpha >= 0 && lo >= 0)) {
        throw std::invalid_argument("amplitudes must be non-negative");
    }
    return run_trials(trials, seed, threads, [&](TrialRng &rng) {
        int sent = draw_hypothesis(0.5, rng);
        int64_t delta = homodyne_like_difference(sent == 0 ? -alpha : alpha, lo, detector, rng);
        int decided = delta < 0 ? 0 : delta > 0 ? 1 : (rng.uniform() < 0.5 ? 0 : 1);
        return decided != sent;
    });
}

std::string_view receiver_kind_name(ReceiverKind kind) {
    switch (kind) {
        case ReceiverKind::Hybrid:
            return "hybrid";
        case ReceiverKind::HomodyneLike:
            return "homodyne-like";
        case ReceiverKind::Dpnrm:
            return "dpnrm";
    }
    return "?";
}

int allowed_outliers(size_t cases) {
    double n = static_cast<double>(cases);
    double expected = n * kThreeSigmaTail;
    return static_cast<int>(std::ceil(expected + 3 * std::sqrt(expected * (1 - kThreeSigmaTail))));
}

bool concordant(double analytic, const McEstimate &estimate) {
    double n = static_cast<double>(estimate.trials);
    double expected = n * analytic;
    if (expected >= 25) {
        double sigma = std::sqrt(analytic * (1 - analytic) / n);
        return std::abs(estimate.p_err_hat - analytic) < 3 * sigma;
    }
    if (expected <= 0) {
        return estimate.errors == 0;
    }
    auto [at_most, at_least] = poisson_tails(expected, estimate.errors);
    return at_most > kThreeSigmaTail / 2 && at_least > kThreeSigmaTail / 2;
}

std::vector<ValidationCase> default_validation_matrix(double lo_sq) {
    std::vector<ValidationCase> cases;
    for (ReceiverKind kind : {ReceiverKind::Hybrid, ReceiverKind::HomodyneLike, ReceiverKind::Dpnrm}) {
        for (double alpha_sq : {0.25, 1.0, 4.0}) {
            for (int m : {1, 3, 30}) {
                for (double eta : {1.0, 0.7}) {
                    for (double nu : {0.0, 1e-3}) {
                        for (double xi : {1.0, 0.998}) {
                            DetectorModel d;
                            d.resolution = Resolution(m);
                            d.efficiency = eta;
                            d.dark_rate = nu;
                            d.visibility = xi;
                            cases.push_back({kind, alpha_sq, lo_sq, d});
                        }
                    }
                }
            }
        }
    }
    return cases;
}

ValidationRow run_validation_case(const ValidationCase &c, int64_t trials, uint64_t seed, int threads) {
    ValidationRow row;
    row.config = c;
    double alpha = std::sqrt(c.alpha_sq);
    double lo = std::sqrt(c.lo_sq);
    switch (c.receiver) {
        case ReceiverKind::Hybrid: {
            auto opt = optimize_tau(alpha, lo, c.detector, Benchmark::Kennedy);
            SignalConfig config{alpha, lo, 0.5, 0.5, opt.tau_opt};
            row.tau = opt.tau_opt;
            row.analytic = hybrid_error(config, c.detector).p_err;
            row.estimate = simulate_hybrid(config, c.detector, trials, seed, threads);
            break;
        }
        case ReceiverKind::HomodyneLike:
            row.tau = 0;
            row.analytic = homodyne_like_error(alpha, lo, c.detector).p_err;
            row.estimate = simulate_homodyne_like(alpha, lo, c.detector, trials, seed, threads);
            break;
        case ReceiverKind::Dpnrm:
            row.tau = 1;
            row.analytic = dpnrm_error(alpha, c.detector).p_err;
            row.estimate = simulate_dpnrm(alpha, c.detector, trials, seed, threads);
            break;
    }
    row.sigma = std::sqrt(row.analytic * (1 - row.analytic) / static_cast<double>(trials));
    row.pass = concordant(row.analytic, row.estimate);
    return row;
}

ValidationReport run_validation(std::span<const ValidationCase> cases, int64_t trials, uint64_t seed, int threads) {
    ValidationReport report;
    report.trials = trials;
    report.seed = seed;
    report.allowed_outliers = allowed_outliers(cases.size());
    for (size_t i = 0; i < cases.size(); i++) {
        uint64_t case_seed = TrialRng(seed, i)();
        report.rows.push_back(run_validation_case(cases[i], trials, case_seed, threads));
        if (!report.rows.back().pass) {
            report.failures++;
        }
    }
    return report;
}

}  // namespace hybridrx
