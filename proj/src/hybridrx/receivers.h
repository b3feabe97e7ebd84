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

#ifndef _HYBRIDRX_RECEIVERS_H
#define _HYBRIDRX_RECEIVERS_H

#include <cstdint>
#include <optional>

#include "hybridrx/distributions.h"
#include "hybridrx/map_decision.h"

namespace hybridrx {

/// BPSK signal |-alpha> ("0") / |+alpha> ("1") together with the receiver settings.
struct SignalConfig {
    double alpha = 0;  // signal amplitude, energy alpha^2
    double lo = 0;     // local oscillator amplitude z
    double q0 = 0.5;
    double q1 = 0.5;
    double tau = 0;  // splitter transmissivity toward the displacement stage

    void validate() const;
    bool equal_priors() const {
        return q0 == q1;
    }
};

struct ReceiverResult {
    double p_err = 0;
    double tau_used = 0;
    std::optional<int64_t> n_th_used;
    double p_err_given_0 = 0;  // p(1|0)
    double p_err_given_1 = 0;  // p(0|1)
    /// The configuration combines imperfections (or priors) outside the
    /// single-imperfection cases the receiver formulas were derived for.
    bool extension = false;
};

/// True when more than one of eta < 1, nu > 0, xi < 1 is active.
bool is_extension(const DetectorModel &detector);

double helstrom_bound(double alpha, double q0 = 0.5, double q1 = 0.5);

/// On-off displacement receiver with efficiency eta: e^{-4 eta alpha^2} / 2.
double kennedy_error(double alpha, double efficiency = 1.0);

/// Ideal homodyne: erfc(sqrt(2) alpha) / 2.
double homodyne_sql(double alpha);

/// Homodyne-like receiver deciding on the sign of the count difference, with a
/// fair coin on a zero difference.
ReceiverResult homodyne_like_error(double alpha, double lo, const DetectorModel &detector);

/// Rates (dim, bright) seen by the final PNR detector of the hybrid receiver
/// after the feed-forward displacement, for the nulled and the doubled hypothesis.
std::pair<double, double> hybrid_final_rates(const SignalConfig &config, const DetectorModel &detector);

/// Final-stage rules of the hybrid receiver for the two homodyne-like branches.
/// `nonnegative` applies after a difference >= 0 (displacement nulls "0"),
/// `negative` after a difference < 0 (displacement nulls "1").
struct HybridRules {
    ThresholdRule nonnegative;
    ThresholdRule negative;
};
HybridRules hybrid_rules(const SignalConfig &config, const DetectorModel &detector);

/// Hybrid receiver: homodyne-like detection on the reflected fraction 1 - tau
/// picks the sign of a nulling displacement on the transmitted fraction, which
/// is then counted by a PNR detector and decided by a MAP threshold.
ReceiverResult hybrid_error(const SignalConfig &config, const DetectorModel &detector);

/// Hybrid receiver in the infinite-LO limit, where the homodyne-like stage
/// becomes ideal homodyne detection.
double hybrid_error_hd(double alpha, double tau);

/// Displacement receiver with a PNR(M) detector and MAP decision. Throws
/// std::domain_error for unbounded resolution.
ReceiverResult dpnrm_error(double alpha, const DetectorModel &detector);

/// Large-energy limit of dpnrm_error: half the probability that the nulled
/// hypothesis fills the top outcome M. Depends on alpha only through the
/// visibility residue.
double dpnrm_asymptote(double alpha, const DetectorModel &detector);

}  // namespace hybridrx

#endif
