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

#ifndef _HYBRIDRX_NUMERICS_H
#define _HYBRIDRX_NUMERICS_H

#include <cmath>

namespace hybridrx {

/// Neumaier-compensated running sum.
class CompensatedSum {
   public:
    CompensatedSum &operator+=(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            compensation_ += (sum_ - t) + x;
        } else {
            compensation_ += (x - t) + sum_;
        }
        sum_ = t;
        return *this;
    }
    double value() const {
        return sum_ + compensation_;
    }

   private:
    double sum_ = 0;
    double compensation_ = 0;
};

}  // namespace hybridrx

#endif
