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

#ifndef DPB_GRAPH_ALGORITHMS_H_
#define DPB_GRAPH_ALGORITHMS_H_

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "dpb/graph.h"
#include "dpb/rng.h"

namespace dpb {

// Number of connected components, by union-find. With a weight limit only
// edges of weight <= max_edge_weight are used.
int64_t CcExact(const QueryGraph& g);
int64_t CcExactFiltered(const QueryGraph& g, int max_edge_weight);

// Kruskal. FailedPrecondition on a disconnected graph.
absl::StatusOr<double> MstWeightExact(const QueryGraph& g);

// Sampling estimator of the component count with additive error kappa * n.
struct CcEstimateParams {
  double kappa = 0;
  double fail_prob = 1.0 / 3;
  // ceil(4 / kappa^2)
  int64_t sample_count = 0;
  // ceil(2 / kappa)
  int64_t bfs_cap = 0;

  static absl::StatusOr<CcEstimateParams> Create(double kappa);

  // s * cap * (cap + 1): the most queries one estimate can make.
  int64_t QueryBudget() const { return sample_count * bfs_cap * (bfs_cap + 1); }
};

// Truncated component sizes min(|C(v)|, cap) remembered across estimates on
// one graph. Keyed by (edge weight limit, cap). Sizes are a deterministic
// function of the graph, so sharing them changes only the query count.
class ComponentSizeCache {
 public:
  int* Find(int max_edge_weight, int64_t cap, int v);
  void Store(int max_edge_weight, int64_t cap, int v, int size, int n);

 private:
  std::map<std::pair<int, int64_t>, std::vector<int>> sizes_;
};

struct CcEstimateOptions {
  // Only edges of weight <= this limit are followed; 0 means all edges.
  int max_edge_weight = 0;
  ComponentSizeCache* cache = nullptr;
};

// Samples s vertices uniformly with replacement, measures the component of
// each with a BFS that stops after discovering cap vertices, and returns
// (n / s) * sum 1 / min(|C(u)|, cap). Every query goes through the graph's
// counters. Within kappa * n of the truth with probability >= 2/3.
double CcEstimate(const QueryGraph& g, const CcEstimateParams& params,
                  Rng& rng, const CcEstimateOptions& options = {});

// Median of `copies` independent CcEstimate runs.
double CcEstimateMedian(const QueryGraph& g, const CcEstimateParams& params,
                        int copies, Rng& rng,
                        const CcEstimateOptions& options = {});

struct MstEstimatePlan {
  // Per-level additive fraction of n.
  double level_kappa = 0;
  // Median copies per level.
  int copies_per_level = 1;
};

// Per-level additive fraction alpha / (2w) and per-level failure
// fail_prob / w. A nonzero extra_kappa (absolute) widens the per-level
// target to max(alpha / (2w), extra_kappa / (w n)).
absl::StatusOr<MstEstimatePlan> PlanMstEstimate(const QueryGraph& g,
                                                double alpha, double fail_prob,
                                                double extra_kappa = 0);

// n - w + sum_{i=1}^{w-1} C^(i), each C^(i) a median-boosted CcEstimate on
// the subgraph of edges with weight <= i. A (1 +- alpha) approximation of the
// MST weight with probability >= 1 - fail_prob.
absl::StatusOr<double> MstWeightEstimate(const QueryGraph& g, double alpha,
                                         double fail_prob, Rng& rng,
                                         ComponentSizeCache* cache = nullptr);
absl::StatusOr<double> MstWeightEstimateWithPlan(
    const QueryGraph& g, const MstEstimatePlan& plan, Rng& rng,
    ComponentSizeCache* cache = nullptr);

}  // namespace dpb

#endif  // DPB_GRAPH_ALGORITHMS_H_
