// Copyright 2026 The dpb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dpb/sliding_window.h"

#include <cmath>
#include <cstdint>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpb {

absl::Status SmoothnessParams::Validate() const {
  if (!(rho > 0 && rho < 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("rho must lie in (0, 1), got ", rho));
  }
  if (!(xi > 0 && xi <= rho)) {
    return absl::InvalidArgumentError(
        absl::StrCat("xi must lie in (0, rho], got ", xi));
  }
  return absl::OkStatus();
}

double SmoothnessXiDistinct(double rho) { return rho; }

double SmoothnessXiF2(double rho) { return rho * rho / 2; }

double HistogramSketchFailProb(double target, int64_t m,
                               int64_t max_instances) {
  return target / (static_cast<double>(m) * static_cast<double>(max_instances));
}

}  // namespace dpb
