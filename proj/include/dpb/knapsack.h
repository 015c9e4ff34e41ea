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

#ifndef DPB_KNAPSACK_H_
#define DPB_KNAPSACK_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dpb/rng.h"

namespace dpb {

// Items larger than the capacity are allowed and simply never selected.
// Two instances are neighbors when they share capacity and sizes and their
// values differ by at most 1 in total, so the optimum has sensitivity 1.
struct KnapsackInstance {
  int64_t capacity = 0;
  std::vector<int64_t> sizes;
  std::vector<double> values;

  absl::Status Validate() const;
};

struct KnapsackSolution {
  double value = 0;
  std::vector<int> items;
};

// Profit-scaling FPTAS: mu = alpha * v_max / n over the fitting items,
// scaled values floor(v / mu), exact min-size DP over scaled profit, and the
// original value of the selected set. Deterministic; the result lies in
// [(1 - alpha) OPT, OPT]. alpha = 0 solves exactly.
absl::StatusOr<KnapsackSolution> KnapsackFptas(const KnapsackInstance& inst,
                                               double alpha);

// Exact optimum by DP over capacity. ResourceExhausted when n * B is large.
absl::StatusOr<KnapsackSolution> KnapsackExact(const KnapsackInstance& inst);

// Text format: "n B" then n lines "size value"; '#' starts a comment.
absl::StatusOr<KnapsackInstance> ParseKnapsack(const std::string& text);
absl::StatusOr<KnapsackInstance> LoadKnapsack(const std::string& path);

// n items with sizes uniform in [1, max_size] and integer values uniform in
// [0, max_value]; the capacity is half the total size.
KnapsackInstance RandomKnapsack(int n, int64_t max_size, int max_value,
                                Rng& rng);

// Moves total value mass at most 1 on one uniformly chosen item.
KnapsackInstance KnapsackNeighbor(const KnapsackInstance& inst, Rng& rng);

}  // namespace dpb

#endif  // DPB_KNAPSACK_H_
