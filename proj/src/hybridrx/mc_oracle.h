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

#ifndef _HYBRIDRX_MC_ORACLE_H
#define _HYBRIDRX_MC_ORACLE_H

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hybridrx/receivers.h"

namespace hybridrx {

/// SplitMix64 generator whose starting state is a hash of (seed, trial).
///
/// Every trial owns an independent stream, so a simulation is reproducible from
/// (seed, trials) no matter how trials are distributed over threads.
class TrialRng {
   public:
    using result_type = uint64_t;

    TrialRng(uint64_t seed, uint64_t trial);

    static constexpr result_type min() {
        return 0;
    }
    static constexpr result_type max() {
        return std::numeric_limits<result_type>::max();
    }
    result_type operator()();
    /// Uniform double in [0, 1).
    double uniform();

   private:
    uint64_t state_;
};

/// Single-pass realization of one receiver use.
struct TrialOutcome {
    int sent;
    int64_t delta;
    int64_t final_count;
    int decided;
};

struct McEstimate {
    double p_err_hat = 0;
    double std_err = 0;  // sqrt(p_hat (1 - p_hat) / trials)
    int64_t trials = 0;
    uint64_t seed = 0;
    int64_t errors = 0;
};

inline constexpr int64_t kMinTrials = 1000;

/// Draws one photon count: the part of the field matched to the reference mode,
/// the mismatched energy, loss and dark counts, then pooling at M.
int64_t sample_detector(double matched_amplitude, double mismatched_energy, const DetectorModel &detector, TrialRng &rng);

TrialOutcome hybrid_trial(
    const SignalConfig &config, const DetectorModel &detector, const HybridRules &rules, TrialRng &rng);

/// Simulates state choice, splitting, homodyne-like counting, feed-forward
/// displacement, final PNR counting and the threshold decision.
McEstimate simulate_hybrid(
    const SignalConfig &config, const DetectorModel &detector, int64_t trials, uint64_t seed, int threads = 1);

McEstimate simulate_dpnrm(double alpha, const DetectorModel &detector, int64_t trials, uint64_t seed, int threads = 1);

McEstimate simulate_homodyne_like(
    double alpha, double lo, const DetectorModel &detector, int64_t trials, uint64_t seed, int threads = 1);

enum class ReceiverKind { Hybrid, HomodyneLike, Dpnrm };

std::string_view receiver_kind_name(ReceiverKind kind);

struct ValidationCase {
    ReceiverKind receiver;
    double alpha_sq;
    double lo_sq;
    DetectorModel detector;
};

struct ValidationRow {
    ValidationCase config;
    double tau = 0;
    double analytic = 0;
    McEstimate estimate;
    /// Binomial standard deviation of the estimate under the analytic value.
    double sigma = 0;
    bool pass = false;
};

struct ValidationReport {
    std::vector<ValidationRow> rows;
    int64_t trials = 0;
    uint64_t seed = 0;
    int failures = 0;
    int allowed_outliers = 0;

    bool passed() const {
        return failures <= allowed_outliers;
    }
};

/// Probability that a correct analytic value lands outside 3 sigma.
inline constexpr double kThreeSigmaTail = 0.0026997960632601866;

/// Outliers tolerated across `cases` independent 3-sigma checks: the binomial
/// expectation plus three of its standard deviations, rounded up.
int allowed_outliers(size_t cases);

/// Two-sided 3-sigma concordance of an estimate with an analytic value. Rare
/// events (fewer than 25 expected errors) use the exact Poisson tails at the
/// same significance instead of the normal approximation.
bool concordant(double analytic, const McEstimate &estimate);

/// alpha^2 in {0.25, 1, 4}, M in {1, 3, 30}, eta in {1, 0.7}, nu in {0, 1e-3},
/// xi in {1, 0.998} for the hybrid, homodyne-like and displacement-PNR receivers.
std::vector<ValidationCase> default_validation_matrix(double lo_sq = 5);

ValidationRow run_validation_case(const ValidationCase &c, int64_t trials, uint64_t seed, int threads = 1);

ValidationReport run_validation(std::span<const ValidationCase> cases, int64_t trials, uint64_t seed, int threads = 1);

}  // namespace hybridrx

#endif
