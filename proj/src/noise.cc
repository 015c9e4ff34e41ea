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

#include "dpb/noise.h"

#include <cmath>
#include <numbers>

#include "absl/strings/str_cat.h"

namespace dpb {

absl::StatusOr<NoiseScale> NoiseScale::Create(double b) {
  if (!(b >= 0) || !std::isfinite(b)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Noise scale must be finite and non-negative, got ", b));
  }
  return NoiseScale(b);
}

double SampleLaplace(NoiseScale scale, Rng& rng) {
  const double u = rng.UniformOpen01();
  if (scale.value() == 0) return 0.0;
  const double v = u - 0.5;
  // log1p keeps precision for |v| near 0; |v| < 1/2 so the argument is > -1.
  const double magnitude = -scale.value() * std::log1p(-2.0 * std::fabs(v));
  return v < 0 ? -magnitude : magnitude;
}

double SampleCauchy(NoiseScale scale, Rng& rng) {
  const double u = rng.UniformOpen01();
  if (scale.value() == 0) return 0.0;
  return scale.value() * std::tan(std::numbers::pi * (u - 0.5));
}

double LaplaceTail(double l) { return std::exp(-l); }

double CauchyTail(double l) {
  return 1.0 - 2.0 * std::atan(l) / std::numbers::pi;
}

}  // namespace dpb
