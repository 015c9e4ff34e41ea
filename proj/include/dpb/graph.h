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

#ifndef DPB_GRAPH_H_
#define DPB_GRAPH_H_

#include <atomic>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpb/rng.h"

namespace dpb {

struct Edge {
  int u = 0;
  int v = 0;
  int weight = 1;

  bool operator==(const Edge& o) const {
    return u == o.u && v == o.v && weight == o.weight;
  }
};

struct QueryCounts {
  int64_t degree = 0;
  int64_t neighbor = 0;
  int64_t pair = 0;

  int64_t total() const { return degree + neighbor + pair; }
};

// Undirected simple graph behind a query interface. The structure is
// immutable; the counters are relaxed atomics so concurrent readers can share
// one instance.
class QueryGraph {
 public:
  // Rejects self-loops, duplicate edges, out-of-range endpoints, and weights
  // outside [1, max_weight].
  static absl::StatusOr<QueryGraph> Create(int n, std::vector<Edge> edges,
                                           int max_weight = 1);

  QueryGraph(const QueryGraph& other);
  QueryGraph& operator=(const QueryGraph& other);
  QueryGraph(QueryGraph&& other) noexcept;
  QueryGraph& operator=(QueryGraph&& other) noexcept;

  int num_vertices() const { return n_; }
  int64_t num_edges() const { return static_cast<int64_t>(edges_.size()); }
  int max_weight() const { return max_weight_; }

  absl::StatusOr<int> Degree(int v) const;
  // The i-th neighbor of v in ascending order, or nullopt when i >= deg(v).
  absl::StatusOr<std::optional<int>> Neighbor(int v, int64_t i) const;
  // Weight of the edge to the i-th neighbor; counted as a neighbor query.
  absl::StatusOr<std::optional<std::pair<int, int>>> WeightedNeighbor(
      int v, int64_t i) const;
  absl::StatusOr<bool> HasEdge(int u, int v) const;

  QueryCounts counts() const;
  void ResetCounts();

  // Canonical edge list: u < v, sorted lexicographically.
  const std::vector<Edge>& edges() const { return edges_; }

  // Uncounted access for exact oracles.
  const std::vector<int>& adjacency(int v) const { return adj_[v]; }
  int adjacency_weight(int v, size_t i) const { return adj_weight_[v][i]; }

 private:
  QueryGraph() = default;
  absl::Status CheckVertex(int v) const;

  int n_ = 0;
  int max_weight_ = 1;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
  std::vector<std::vector<int>> adj_weight_;
  mutable std::atomic<int64_t> degree_queries_{0};
  mutable std::atomic<int64_t> neighbor_queries_{0};
  mutable std::atomic<int64_t> pair_queries_{0};
};

// Text format: "n m [w]" then m lines "u v [weight]"; '#' starts a comment.
absl::StatusOr<QueryGraph> ParseGraph(const std::string& text);
absl::StatusOr<QueryGraph> LoadGraph(const std::string& path);
std::string SerializeGraph(const QueryGraph& g);

// Returns (g, g') where g' toggles one uniformly chosen vertex pair of g.
// New edges get weight 1 + uniform in [0, max_weight).
absl::StatusOr<std::pair<QueryGraph, QueryGraph>> EdgeNeighborPair(
    const QueryGraph& g, Rng& rng);

// Toggles the pair (u, v) with the given weight when adding.
absl::StatusOr<QueryGraph> ToggleEdge(const QueryGraph& g, int u, int v,
                                      int weight = 1);

// Erdos-Renyi G(n, p) with weights uniform in [1, max_weight].
QueryGraph RandomGraph(int n, double p, int max_weight, Rng& rng);

// Random spanning tree plus G(n, p) extra edges; always connected.
QueryGraph RandomConnectedGraph(int n, double p, int max_weight, Rng& rng);

// Every simple graph on n vertices (n <= 6), in bitmask order over the pairs
// (0,1), (0,2), ..., (n-2,n-1).
std::vector<QueryGraph> AllGraphs(int n);

}  // namespace dpb

#endif  // DPB_GRAPH_H_
