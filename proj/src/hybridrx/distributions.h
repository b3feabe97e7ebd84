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

#ifndef _HYBRIDRX_DISTRIBUTIONS_H
#define _HYBRIDRX_DISTRIBUTIONS_H

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hybridrx {

/// Poisson mass beyond which an unbounded count distribution is cut off.
inline constexpr double kTailCutoff = 1e-14;
/// Cutoff used where relative accuracy of very small masses matters.
inline constexpr double kDeepTailCutoff = 1e-300;

/// Photon-number resolution of a PNR detector.
///
/// A bounded resolution M distinguishes the outcomes 0..M-1 and pools every
/// count >= M into the single outcome M. PNR(1) is an on-off detector.
class Resolution {
   public:
    static constexpr Resolution unbounded() {
        return Resolution();
    }
    explicit Resolution(int max_count);

    bool is_bounded() const {
        return max_count_ > 0;
    }
    /// Throws std::domain_error when unbounded.
    int max_count() const;

    bool operator==(const Resolution &) const = default;
    std::string str() const;

   private:
    constexpr Resolution() = default;
    int max_count_ = 0;
};

/// Imperfections shared by every photon-counting path of a receiver.
struct DetectorModel {
    Resolution resolution = Resolution::unbounded();
    double efficiency = 1.0;  // eta in (0, 1]
    double dark_rate = 0.0;   // mean dark counts per pulse per detector
    double visibility = 1.0;  // xi in (0, 1]

    static DetectorModel ideal() {
        return DetectorModel{};
    }
    static DetectorModel with_resolution(Resolution resolution) {
        DetectorModel d;
        d.resolution = resolution;
        return d;
    }

    /// Throws std::invalid_argument if any field is out of range.
    void validate() const;

    /// Rate actually registered by one detector when `mean_photons` impinge on it.
    double count_rate(double mean_photons) const {
        return efficiency * mean_photons + dark_rate;
    }

    bool has_noise() const {
        return dark_rate > 0 || visibility < 1;
    }
    bool is_ideal() const {
        return !resolution.is_bounded() && efficiency == 1 && !has_noise();
    }
    std::string str() const;
};

/// Finite probability vector over a contiguous integer support.
class CountDistribution {
   public:
    CountDistribution(int64_t first, std::vector<double> probs);

    int64_t first() const {
        return first_;
    }
    int64_t last() const {
        return first_ + static_cast<int64_t>(probs_.size()) - 1;
    }
    size_t size() const {
        return probs_.size();
    }
    std::span<const double> probs() const {
        return probs_;
    }
    /// Probability of outcome k; zero outside the support.
    double operator()(int64_t k) const;

    double total() const;
    double mean() const;
    double variance() const;

   private:
    int64_t first_;
    std::vector<double> probs_;
};

/// e^-rate rate^n / n!, evaluated in the log domain for rate > 50.
/// Throws std::domain_error for negative or non-finite rates.
double poisson_pmf(int64_t n, double rate);

/// Outcome probability of a PNR(M) detector facing a Poisson rate: the Poisson
/// mass for n < M, the pooled tail for n = M.
double pnr_outcome_pmf(int64_t n, double rate, Resolution resolution);

/// Probability that a PNR(M) detector reports at least `n` counts.
double pnr_upper_tail(int64_t n, double rate, Resolution resolution);

/// Probability that a PNR(M) detector reports fewer than `n` counts. Summed
/// directly rather than as a complement, so tiny heads keep full precision.
double pnr_lower_tail(int64_t n, double rate, Resolution resolution);

/// Full outcome distribution of a single detector. Unbounded resolution is
/// truncated on both sides where the Poisson tail mass drops below kTailCutoff.
CountDistribution pnr_distribution(double rate, Resolution resolution);

/// Mean photon numbers (mu_c, mu_d) hitting the two arms of a balanced homodyne-like
/// setup for a real signal amplitude s (signed) and LO amplitude z.
std::pair<double, double> homodyne_like_rates(double signal, double lo, double visibility = 1.0);

/// Distribution of the count difference n - m of two PNR detectors facing mean
/// photon numbers mu_c and mu_d, after efficiency and dark counts are applied.
CountDistribution difference_pmf(double mu_c, double mu_d, const DetectorModel &detector);

/// Probability mass of the count difference split by sign.
struct SignMasses {
    double negative;
    double zero;
    double positive;

    double nonnegative() const {
        return zero + positive;
    }
};

/// Same statistics as difference_pmf, marginalized to the sign of the
/// difference in time linear in the support size.
SignMasses difference_sign_masses(double mu_c, double mu_d, const DetectorModel &detector);

/// Skellam probability of the photocurrent difference for an ideal homodyne-like
/// detector with signal amplitude s and LO amplitude z.
double skellam_pmf(int64_t delta, double signal, double lo);

/// Gaussian homodyne density exp(-(x - sqrt(2) s)^2) / sqrt(pi).
double homodyne_pdf(double x, double signal);

}  // namespace hybridrx

#endif
