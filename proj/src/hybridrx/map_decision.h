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

#ifndef _HYBRIDRX_MAP_DECISION_H
#define _HYBRIDRX_MAP_DECISION_H

#include <cstdint>
#include <utility>

#include "hybridrx/distributions.h"

namespace hybridrx {

/// One of the two hypotheses of a photon-counting decision, seen through the
/// Poisson rate it produces on the detector.
struct BinaryHypothesis {
    int label;  // 0 or 1
    double count_rate;
    double prior;
};

/// "n >= n_th decides `orientation`, anything below decides the other label."
///
/// n_th ranges over 1..M for equal priors. Unequal priors may yield 0 (always
/// decide `orientation`) or M + 1 (never).
struct ThresholdRule {
    int64_t n_th = 1;
    int orientation = 1;
    /// Set when one hypothesis is nulled exactly (or the rates coincide) and the
    /// closed form is replaced by the on-off rule n_th = 1.
    bool degenerate = false;

    int decide(int64_t n) const {
        return n >= n_th ? orientation : 1 - orientation;
    }
};

/// Bayes posteriors (p(h0|n), p(h1|n)). Throws std::domain_error when the
/// outcome has zero probability under both hypotheses.
std::pair<double, double> posterior(
    int64_t n, const BinaryHypothesis &h0, const BinaryHypothesis &h1, Resolution resolution);

/// sum_n max[q0 p(n|h0), q1 p(n|h1)]; the MAP error is one minus this.
double correct_probability(const BinaryHypothesis &h0, const BinaryHypothesis &h1, Resolution resolution);

/// Correct-decision probability when every outcome is decided by `rule`.
/// Accumulates the same terms in the same order as correct_probability, so the
/// two agree bit for bit whenever the rule is the MAP rule.
double threshold_correct_probability(
    const BinaryHypothesis &h0, const BinaryHypothesis &h1, const ThresholdRule &rule, Resolution resolution);

/// Equal-prior MAP threshold between a dim and a bright Poisson rate:
/// ceil((bright - dim) / ln(bright / dim)), capped at M.
ThresholdRule threshold_for_rates(double dim_rate, double bright_rate, Resolution resolution);

/// MAP threshold for arbitrary priors, found by comparing prior-weighted
/// likelihoods outcome by outcome.
ThresholdRule map_threshold(const BinaryHypothesis &h0, const BinaryHypothesis &h1, Resolution resolution);

/// Displacement receiver with dark counts: rates (nu, 4 alpha^2 + nu).
ThresholdRule threshold_dark(double alpha, double dark_rate, Resolution resolution);

/// Displacement receiver with imperfect visibility: rates 2 alpha^2 (1 -/+ xi).
ThresholdRule threshold_visibility(double alpha, double visibility, Resolution resolution);

/// Generic displacement beta applied to |+-alpha>: rates |alpha -/+ beta|^2, no resolution cap.
ThresholdRule threshold_general(double alpha, double beta);

}  // namespace hybridrx

#endif
