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

#ifndef DPB_NOISE_H_
#define DPB_NOISE_H_

#include "absl/status/statusor.h"
#include "dpb/rng.h"

namespace dpb {

// Scale b of a zero-centred Laplace or Cauchy distribution. A scale of zero
// is allowed and makes both samplers return exactly 0.
class NoiseScale {
 public:
  static absl::StatusOr<NoiseScale> Create(double b);

  double value() const { return b_; }

 private:
  explicit NoiseScale(double b) : b_(b) {}
  double b_;
};

// Density (1/2b) exp(-|x|/b), by inverse-CDF transform.
double SampleLaplace(NoiseScale scale, Rng& rng);

// Density (1/(pi b)) * b^2 / (x^2 + b^2), by inverse-CDF transform.
double SampleCauchy(NoiseScale scale, Rng& rng);

// Closed-form two-sided tails, Pr[|X| >= l * b].
double LaplaceTail(double l);
double CauchyTail(double l);

}  // namespace dpb

#endif  // DPB_NOISE_H_
