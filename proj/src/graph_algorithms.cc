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

#include "dpb/graph_algorithms.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpb/framework.h"

namespace dpb {
namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n), size_(n, 1), sets_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int Find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool Union(int a, int b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    --sets_;
    return true;
  }

  int64_t sets() const { return sets_; }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
  int64_t sets_;
};

// Truncated BFS from `start`; returns min(|C(start)|, cap).
int TruncatedComponentSize(const QueryGraph& g, int start, int64_t cap,
                           int max_edge_weight) {
  std::vector<int> discovered{start};
  auto seen = [&](int v) {
    return std::find(discovered.begin(), discovered.end(), v) !=
           discovered.end();
  };
  size_t head = 0;
  while (static_cast<int64_t>(discovered.size()) < cap &&
         head < discovered.size()) {
    const int x = discovered[head++];
    const int deg = *g.Degree(x);
    for (int i = 0;
         i < deg && static_cast<int64_t>(discovered.size()) < cap; ++i) {
      int to;
      if (max_edge_weight > 0) {
        const auto entry = *g.WeightedNeighbor(x, i);
        if (entry->second > max_edge_weight) continue;
        to = entry->first;
      } else {
        to = **g.Neighbor(x, i);
      }
      if (!seen(to)) discovered.push_back(to);
    }
  }
  return static_cast<int>(discovered.size());
}

}  // namespace

int64_t CcExact(const QueryGraph& g) { return CcExactFiltered(g, 0); }

int64_t CcExactFiltered(const QueryGraph& g, int max_edge_weight) {
  UnionFind uf(g.num_vertices());
  for (const Edge& e : g.edges()) {
    if (max_edge_weight > 0 && e.weight > max_edge_weight) continue;
    uf.Union(e.u, e.v);
  }
  return uf.sets();
}

absl::StatusOr<double> MstWeightExact(const QueryGraph& g) {
  std::vector<Edge> edges = g.edges();
  std::stable_sort(edges.begin(), edges.end(),
                   [](const Edge& a, const Edge& b) { return a.weight < b.weight; });
  UnionFind uf(g.num_vertices());
  double total = 0;
  for (const Edge& e : edges) {
    if (uf.Union(e.u, e.v)) total += e.weight;
  }
  if (g.num_vertices() > 0 && uf.sets() != 1) {
    return absl::FailedPreconditionError(absl::StrCat(
        "MST weight needs a connected graph; this one has ", uf.sets(),
        " components"));
  }
  return total;
}

absl::StatusOr<CcEstimateParams> CcEstimateParams::Create(double kappa) {
  if (!(kappa > 0) || !std::isfinite(kappa)) {
    return absl::InvalidArgumentError(
        absl::StrCat("kappa must be positive, got ", kappa));
  }
  CcEstimateParams p;
  p.kappa = kappa;
  p.sample_count = static_cast<int64_t>(std::ceil(4 / (kappa * kappa)));
  p.bfs_cap = static_cast<int64_t>(std::ceil(2 / kappa));
  return p;
}

int* ComponentSizeCache::Find(int max_edge_weight, int64_t cap, int v) {
  auto it = sizes_.find({max_edge_weight, cap});
  if (it == sizes_.end() || it->second[v] == 0) return nullptr;
  return &it->second[v];
}

void ComponentSizeCache::Store(int max_edge_weight, int64_t cap, int v,
                               int size, int n) {
  std::vector<int>& slot = sizes_[{max_edge_weight, cap}];
  if (slot.empty()) slot.assign(n, 0);
  slot[v] = size;
}

double CcEstimate(const QueryGraph& g, const CcEstimateParams& params,
                  Rng& rng, const CcEstimateOptions& options) {
  const int n = g.num_vertices();
  if (n == 0) return 0;
  std::unordered_map<int, int> memo;
  double sum = 0;
  for (int64_t i = 0; i < params.sample_count; ++i) {
    const int u = static_cast<int>(rng.UniformInt(static_cast<uint64_t>(n)));
    int size = 0;
    if (options.cache != nullptr) {
      if (int* hit = options.cache->Find(options.max_edge_weight,
                                         params.bfs_cap, u)) {
        size = *hit;
      } else {
        size = TruncatedComponentSize(g, u, params.bfs_cap,
                                      options.max_edge_weight);
        options.cache->Store(options.max_edge_weight, params.bfs_cap, u, size,
                             n);
      }
    } else if (auto it = memo.find(u); it != memo.end()) {
      size = it->second;
    } else {
      size = TruncatedComponentSize(g, u, params.bfs_cap,
                                    options.max_edge_weight);
      memo.emplace(u, size);
    }
    sum += 1.0 / size;
  }
  return static_cast<double>(n) * sum /
         static_cast<double>(params.sample_count);
}

double CcEstimateMedian(const QueryGraph& g, const CcEstimateParams& params,
                        int copies, Rng& rng,
                        const CcEstimateOptions& options) {
  std::vector<double> values;
  values.reserve(copies);
  for (int i = 0; i < copies; ++i) {
    values.push_back(CcEstimate(g, params, rng, options));
  }
  return Median(std::move(values));
}

absl::StatusOr<MstEstimatePlan> PlanMstEstimate(const QueryGraph& g,
                                                double alpha, double fail_prob,
                                                double extra_kappa) {
  if (!(alpha >= 0 && alpha < 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("alpha must lie in [0, 1), got ", alpha));
  }
  if (!(fail_prob > 0 && fail_prob < 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("fail_prob must lie in (0, 1), got ", fail_prob));
  }
  const double w = g.max_weight();
  MstEstimatePlan plan;
  plan.level_kappa = alpha / (2 * w);
  if (extra_kappa > 0 && g.num_vertices() > 0) {
    plan.level_kappa =
        std::max(plan.level_kappa, extra_kappa / (w * g.num_vertices()));
  }
  if (!(plan.level_kappa > 0)) {
    return absl::InvalidArgumentError(
        "MST estimation needs alpha > 0 or a positive additive target");
  }
  const double level_fail = fail_prob / w;
  plan.copies_per_level =
      level_fail < 1.0 / 3 ? MedianReplications(level_fail) : 1;
  return plan;
}

absl::StatusOr<double> MstWeightEstimate(const QueryGraph& g, double alpha,
                                         double fail_prob, Rng& rng,
                                         ComponentSizeCache* cache) {
  DPB_ASSIGN_OR_RETURN(const MstEstimatePlan plan,
                       PlanMstEstimate(g, alpha, fail_prob));
  return MstWeightEstimateWithPlan(g, plan, rng, cache);
}

absl::StatusOr<double> MstWeightEstimateWithPlan(const QueryGraph& g,
                                                 const MstEstimatePlan& plan,
                                                 Rng& rng,
                                                 ComponentSizeCache* cache) {
  // Input validation only; this traversal is not charged to the query model.
  if (g.num_vertices() > 0 && CcExact(g) != 1) {
    return absl::FailedPreconditionError(
        "MST weight estimation needs a connected graph");
  }
  DPB_ASSIGN_OR_RETURN(const CcEstimateParams params,
                       CcEstimateParams::Create(plan.level_kappa));
  const int w = g.max_weight();
  double total = static_cast<double>(g.num_vertices()) - w;
  for (int level = 1; level < w; ++level) {
    CcEstimateOptions options;
    options.max_edge_weight = level;
    options.cache = cache;
    total += CcEstimateMedian(g, params, plan.copies_per_level, rng, options);
  }
  return total;
}

}  // namespace dpb
