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


#ifndef _HRX_COMMANDS_H
#define _HRX_COMMANDS_H

#include <iosfwd>
#include <string>
#include <vector>

#include "hybridrx/hybridrx.h"
#include "run_config.h"

namespace hrx {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitValidation = 3;

inline constexpr int64_t kMinValidateTrials = 10000;

/// Rows of `alpha_sq,tau_opt,p_hyb,p_benchmark,ratio` for the configured
/// receiver. For receivers other than the hybrid one, p_hyb holds that
/// receiver's error probability and tau_opt the transmissivity it implies.
std::vector<hrx_sweep_row> compute_sweep(const RunConfig &config);

void write_sweep_csv(std::ostream &out, const RunConfig &config, const std::vector<hrx_sweep_row> &rows);

int cmd_sweep(const RunConfig &config);
int cmd_figure(const std::string &name, const RunConfig &config);
int cmd_constants(std::ostream &out);
int cmd_validate(const RunConfig &config);

const std::vector<std::string> &figure_names();

}  // namespace hrx

#endif
