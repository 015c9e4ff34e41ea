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

#ifndef DPB_SUBSTRATES_H_
#define DPB_SUBSTRATES_H_

#include <cstdint>

#include "dpb/approx.h"
#include "dpb/graph.h"
#include "dpb/knapsack.h"
#include "dpb/stream.h"

namespace dpb {

// Tunable substrates for the wrappers. Estimators fall back to their exact
// counterpart when asked for zero error or zero failure probability, so the
// contract holds for every parameter setting.

// Connected components. The estimator's guarantee is additive (kappa is an
// absolute count, converted to the fraction kappa / n); it succeeds with
// probability 2/3 whatever fail_prob is asked for.
TunableSubstrate<QueryGraph> CcExactSubstrate();
TunableSubstrate<QueryGraph> CcEstimateSubstrate();

// MST weight; the estimator honours the requested fail_prob directly.
TunableSubstrate<QueryGraph> MstExactSubstrate();
TunableSubstrate<QueryGraph> MstEstimateSubstrate();

// Knapsack optimum; the FPTAS is deterministic.
TunableSubstrate<KnapsackInstance> KnapsackExactSubstrate();
TunableSubstrate<KnapsackInstance> KnapsackFptasSubstrate();

// Second moment and L2 norm of the final frequency vector.
TunableSubstrate<UpdateStream> F2ExactSubstrate();
TunableSubstrate<UpdateStream> F2AmsSubstrate();
TunableSubstrate<UpdateStream> L2ExactSubstrate();
// sqrt of the AMS second-moment estimate.
TunableSubstrate<UpdateStream> L2AmsSubstrate();

// Distinct elements of an insertion-only stream.
TunableSubstrate<UpdateStream> F0ExactSubstrate();
TunableSubstrate<UpdateStream> F0KmvSubstrate();

struct WindowedStream {
  UpdateStream stream;
  int64_t window = 1;
};

// Distinct elements of the last `window` updates.
TunableSubstrate<WindowedStream> WindowDistinctExactSubstrate();
// Smooth histogram of KMV sketches with rho = alpha_s = alpha / 3, so the
// combined error rho + alpha_s + rho alpha_s stays below alpha.
TunableSubstrate<WindowedStream> WindowDistinctSketchSubstrate();

}  // namespace dpb

#endif  // DPB_SUBSTRATES_H_
