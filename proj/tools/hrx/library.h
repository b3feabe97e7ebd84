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


#ifndef _HRX_LIBRARY_H
#define _HRX_LIBRARY_H

#include <memory>
#include <stdexcept>
#include <string>

#include "hybridrx/hybridrx.h"

namespace hrx {

/// A failed library call, carrying its status code.
class LibraryError : public std::runtime_error {
   public:
    LibraryError(hrx_status status, const std::string &message) : std::runtime_error(message), status(status) {
    }
    hrx_status status;
};

/// Throws LibraryError unless `status` is HRX_OK.
inline void check(hrx_status status) {
    if (status != HRX_OK) {
        throw LibraryError(status, std::string(hrx_status_string(status)) + ": " + hrx_last_error());
    }
}

template <typename T, void (*Destroy)(T *)>
struct Deleter {
    void operator()(T *p) const {
        Destroy(p);
    }
};

using Detector = std::unique_ptr<hrx_detector, Deleter<hrx_detector, hrx_detector_destroy>>;
using SweepTable = std::unique_ptr<hrx_sweep_table, Deleter<hrx_sweep_table, hrx_sweep_table_destroy>>;
using ValidationReport =
    std::unique_ptr<hrx_validation_report, Deleter<hrx_validation_report, hrx_validation_report_destroy>>;

}  // namespace hrx

#endif
