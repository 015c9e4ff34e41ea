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

#include "dpb/graph.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpb/status_macros.h"

namespace dpb {
namespace {

bool EdgeLess(const Edge& a, const Edge& b) {
  return a.u != b.u ? a.u < b.u : a.v < b.v;
}

// Batagelj-Brandes geometric skipping over the pairs u < v.
template <typename Fn>
void ForEachRandomPair(int n, double p, Rng& rng, Fn fn) {
  if (p <= 0 || n < 2) return;
  if (p >= 1) {
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) fn(u, v);
    return;
  }
  const double log_q = std::log1p(-p);
  int64_t v = 1, w = -1;
  while (v < n) {
    w += 1 + static_cast<int64_t>(std::floor(std::log(rng.UniformOpen01()) /
                                             log_q));
    while (w >= v && v < n) {
      w -= v;
      ++v;
    }
    if (v < n) fn(static_cast<int>(w), static_cast<int>(v));
  }
}

int RandomWeight(int max_weight, Rng& rng) {
  return 1 + static_cast<int>(rng.UniformInt(static_cast<uint64_t>(max_weight)));
}

// Strips a '#' comment and returns the remaining tokens of one line.
std::vector<std::string> Tokens(const std::string& line) {
  std::istringstream in(line.substr(0, line.find('#')));
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

absl::StatusOr<int64_t> ParseInt(const std::string& s, int line_no) {
  size_t pos = 0;
  int64_t v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (...) {
    pos = 0;
  }
  if (pos != s.size() || s.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("Line ", line_no, ": expected an integer, got '", s, "'"));
  }
  return v;
}

}  // namespace

absl::StatusOr<QueryGraph> QueryGraph::Create(int n, std::vector<Edge> edges,
                                              int max_weight) {
  if (n < 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("Vertex count must be nonnegative, got ", n));
  }
  if (max_weight < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("Maximum weight must be at least 1, got ", max_weight));
  }
  for (Edge& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      return absl::InvalidArgumentError(absl::StrCat(
          "Edge (", e.u, ", ", e.v, ") has an endpoint outside [0, ", n, ")"));
    }
    if (e.u == e.v) {
      return absl::InvalidArgumentError(
          absl::StrCat("Self-loop at vertex ", e.u));
    }
    if (e.weight < 1 || e.weight > max_weight) {
      return absl::InvalidArgumentError(
          absl::StrCat("Edge (", e.u, ", ", e.v, ") has weight ", e.weight,
                       " outside [1, ", max_weight, "]"));
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), EdgeLess);
  for (size_t i = 1; i < edges.size(); ++i) {
    if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v) {
      return absl::InvalidArgumentError(absl::StrCat(
          "Duplicate edge (", edges[i].u, ", ", edges[i].v, ")"));
    }
  }
  QueryGraph g;
  g.n_ = n;
  g.max_weight_ = max_weight;
  g.adj_.assign(n, {});
  g.adj_weight_.assign(n, {});
  std::vector<std::vector<std::pair<int, int>>> lists(n);
  for (const Edge& e : edges) {
    lists[e.u].push_back({e.v, e.weight});
    lists[e.v].push_back({e.u, e.weight});
  }
  for (int v = 0; v < n; ++v) {
    std::sort(lists[v].begin(), lists[v].end());
    g.adj_[v].reserve(lists[v].size());
    g.adj_weight_[v].reserve(lists[v].size());
    for (const auto& [to, w] : lists[v]) {
      g.adj_[v].push_back(to);
      g.adj_weight_[v].push_back(w);
    }
  }
  g.edges_ = std::move(edges);
  return g;
}

QueryGraph::QueryGraph(const QueryGraph& other)
    : n_(other.n_),
      max_weight_(other.max_weight_),
      edges_(other.edges_),
      adj_(other.adj_),
      adj_weight_(other.adj_weight_),
      degree_queries_(other.degree_queries_.load(std::memory_order_relaxed)),
      neighbor_queries_(
          other.neighbor_queries_.load(std::memory_order_relaxed)),
      pair_queries_(other.pair_queries_.load(std::memory_order_relaxed)) {}

QueryGraph& QueryGraph::operator=(const QueryGraph& other) {
  if (this != &other) {
    QueryGraph copy(other);
    *this = std::move(copy);
  }
  return *this;
}

QueryGraph::QueryGraph(QueryGraph&& other) noexcept
    : n_(other.n_),
      max_weight_(other.max_weight_),
      edges_(std::move(other.edges_)),
      adj_(std::move(other.adj_)),
      adj_weight_(std::move(other.adj_weight_)),
      degree_queries_(other.degree_queries_.load(std::memory_order_relaxed)),
      neighbor_queries_(
          other.neighbor_queries_.load(std::memory_order_relaxed)),
      pair_queries_(other.pair_queries_.load(std::memory_order_relaxed)) {}

QueryGraph& QueryGraph::operator=(QueryGraph&& other) noexcept {
  n_ = other.n_;
  max_weight_ = other.max_weight_;
  edges_ = std::move(other.edges_);
  adj_ = std::move(other.adj_);
  adj_weight_ = std::move(other.adj_weight_);
  degree_queries_.store(other.degree_queries_.load(std::memory_order_relaxed),
                        std::memory_order_relaxed);
  neighbor_queries_.store(
      other.neighbor_queries_.load(std::memory_order_relaxed),
      std::memory_order_relaxed);
  pair_queries_.store(other.pair_queries_.load(std::memory_order_relaxed),
                      std::memory_order_relaxed);
  return *this;
}

absl::Status QueryGraph::CheckVertex(int v) const {
  if (v < 0 || v >= n_) {
    return absl::InvalidArgumentError(
        absl::StrCat("Vertex ", v, " outside [0, ", n_, ")"));
  }
  return absl::OkStatus();
}

absl::StatusOr<int> QueryGraph::Degree(int v) const {
  DPB_RETURN_IF_ERROR(CheckVertex(v));
  degree_queries_.fetch_add(1, std::memory_order_relaxed);
  return static_cast<int>(adj_[v].size());
}

absl::StatusOr<std::optional<int>> QueryGraph::Neighbor(int v,
                                                        int64_t i) const {
  DPB_RETURN_IF_ERROR(CheckVertex(v));
  neighbor_queries_.fetch_add(1, std::memory_order_relaxed);
  if (i < 0 || i >= static_cast<int64_t>(adj_[v].size())) return std::nullopt;
  return adj_[v][i];
}

absl::StatusOr<std::optional<std::pair<int, int>>>
QueryGraph::WeightedNeighbor(int v, int64_t i) const {
  DPB_RETURN_IF_ERROR(CheckVertex(v));
  neighbor_queries_.fetch_add(1, std::memory_order_relaxed);
  if (i < 0 || i >= static_cast<int64_t>(adj_[v].size())) return std::nullopt;
  return std::make_pair(adj_[v][i], adj_weight_[v][i]);
}

absl::StatusOr<bool> QueryGraph::HasEdge(int u, int v) const {
  DPB_RETURN_IF_ERROR(CheckVertex(u));
  DPB_RETURN_IF_ERROR(CheckVertex(v));
  pair_queries_.fetch_add(1, std::memory_order_relaxed);
  return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

QueryCounts QueryGraph::counts() const {
  return {degree_queries_.load(std::memory_order_relaxed),
          neighbor_queries_.load(std::memory_order_relaxed),
          pair_queries_.load(std::memory_order_relaxed)};
}

void QueryGraph::ResetCounts() {
  degree_queries_.store(0, std::memory_order_relaxed);
  neighbor_queries_.store(0, std::memory_order_relaxed);
  pair_queries_.store(0, std::memory_order_relaxed);
}

absl::StatusOr<QueryGraph> ParseGraph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    header = Tokens(line);
  }
  if (header.size() != 2 && header.size() != 3) {
    return absl::InvalidArgumentError(
        "Graph header must be 'n m' or 'n m w'");
  }
  DPB_ASSIGN_OR_RETURN(const int64_t n, ParseInt(header[0], line_no));
  DPB_ASSIGN_OR_RETURN(const int64_t m, ParseInt(header[1], line_no));
  int64_t w = 1;
  if (header.size() == 3) {
    DPB_ASSIGN_OR_RETURN(w, ParseInt(header[2], line_no));
  }
  if (n < 0 || n > (int64_t{1} << 30) || m < 0 || w < 1 ||
      w > (int64_t{1} << 30)) {
    return absl::InvalidArgumentError("Graph header values out of range");
  }
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    const std::vector<std::string> tok = Tokens(line);
    if (tok.empty()) continue;
    if (tok.size() != 2 && tok.size() != 3) {
      return absl::InvalidArgumentError(absl::StrCat(
          "Line ", line_no, ": expected 'u v' or 'u v weight'"));
    }
    Edge e;
    DPB_ASSIGN_OR_RETURN(const int64_t u, ParseInt(tok[0], line_no));
    DPB_ASSIGN_OR_RETURN(const int64_t v, ParseInt(tok[1], line_no));
    int64_t wt = 1;
    if (tok.size() == 3) {
      DPB_ASSIGN_OR_RETURN(wt, ParseInt(tok[2], line_no));
    }
    if (u < 0 || u >= n || v < 0 || v >= n || wt < 1 || wt > w) {
      return absl::InvalidArgumentError(
          absl::StrCat("Line ", line_no, ": edge values out of range"));
    }
    e.u = static_cast<int>(u);
    e.v = static_cast<int>(v);
    e.weight = static_cast<int>(wt);
    edges.push_back(e);
  }
  if (static_cast<int64_t>(edges.size()) != m) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Header announces ", m, " edges but ", edges.size(), " were read"));
  }
  return QueryGraph::Create(static_cast<int>(n), std::move(edges),
                            static_cast<int>(w));
}

absl::StatusOr<QueryGraph> LoadGraph(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("Cannot open ", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  absl::StatusOr<QueryGraph> g = ParseGraph(buf.str());
  if (!g.ok()) {
    return absl::Status(g.status().code(),
                        absl::StrCat(path, ": ", g.status().message()));
  }
  return g;
}

std::string SerializeGraph(const QueryGraph& g) {
  const bool weighted = g.max_weight() > 1;
  std::string out = absl::StrCat(g.num_vertices(), " ", g.num_edges());
  if (weighted) absl::StrAppend(&out, " ", g.max_weight());
  out += "\n";
  for (const Edge& e : g.edges()) {
    absl::StrAppend(&out, e.u, " ", e.v);
    if (weighted) absl::StrAppend(&out, " ", e.weight);
    out += "\n";
  }
  return out;
}

absl::StatusOr<QueryGraph> ToggleEdge(const QueryGraph& g, int u, int v,
                                      int weight) {
  if (u > v) std::swap(u, v);
  std::vector<Edge> edges;
  edges.reserve(g.edges().size() + 1);
  bool removed = false;
  for (const Edge& e : g.edges()) {
    if (e.u == u && e.v == v) {
      removed = true;
    } else {
      edges.push_back(e);
    }
  }
  if (!removed) edges.push_back({u, v, weight});
  return QueryGraph::Create(g.num_vertices(), std::move(edges),
                            g.max_weight());
}

absl::StatusOr<std::pair<QueryGraph, QueryGraph>> EdgeNeighborPair(
    const QueryGraph& g, Rng& rng) {
  const int64_t n = g.num_vertices();
  if (n < 2) {
    return absl::InvalidArgumentError(
        "An edge-neighbor needs at least two vertices");
  }
  const uint64_t slots = static_cast<uint64_t>(n * (n - 1) / 2);
  int64_t k = static_cast<int64_t>(rng.UniformInt(slots));
  int u = 0;
  while (k >= n - 1 - u) {
    k -= n - 1 - u;
    ++u;
  }
  const int v = u + 1 + static_cast<int>(k);
  const int weight = RandomWeight(g.max_weight(), rng);
  DPB_ASSIGN_OR_RETURN(QueryGraph other, ToggleEdge(g, u, v, weight));
  return std::make_pair(g, std::move(other));
}

QueryGraph RandomGraph(int n, double p, int max_weight, Rng& rng) {
  std::vector<Edge> edges;
  ForEachRandomPair(n, p, rng, [&](int u, int v) {
    edges.push_back({u, v, RandomWeight(max_weight, rng)});
  });
  return *QueryGraph::Create(n, std::move(edges), max_weight);
}

QueryGraph RandomConnectedGraph(int n, double p, int max_weight, Rng& rng) {
  std::vector<Edge> edges;
  for (int v = 1; v < n; ++v) {
    const int parent = static_cast<int>(rng.UniformInt(static_cast<uint64_t>(v)));
    edges.push_back({parent, v, RandomWeight(max_weight, rng)});
  }
  std::vector<std::pair<int, int>> tree;
  for (const Edge& e : edges) tree.push_back({e.u, e.v});
  std::sort(tree.begin(), tree.end());
  ForEachRandomPair(n, p, rng, [&](int u, int v) {
    if (!std::binary_search(tree.begin(), tree.end(), std::make_pair(u, v))) {
      edges.push_back({u, v, RandomWeight(max_weight, rng)});
    }
  });
  return *QueryGraph::Create(n, std::move(edges), max_weight);
}

std::vector<QueryGraph> AllGraphs(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.push_back({u, v});
  std::vector<QueryGraph> out;
  const uint64_t total = uint64_t{1} << pairs.size();
  out.reserve(total);
  for (uint64_t mask = 0; mask < total; ++mask) {
    std::vector<Edge> edges;
    for (size_t b = 0; b < pairs.size(); ++b) {
      if (mask >> b & 1) edges.push_back({pairs[b].first, pairs[b].second, 1});
    }
    out.push_back(*QueryGraph::Create(n, std::move(edges)));
  }
  return out;
}

}  // namespace dpb
