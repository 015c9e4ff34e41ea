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

#include "dpb/knapsack.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpb/status_macros.h"

namespace dpb {
namespace {

constexpr int64_t kMaxTableCells = int64_t{1} << 28;

absl::StatusOr<KnapsackSolution> SolveByCapacity(const KnapsackInstance& inst) {
  const int n = static_cast<int>(inst.sizes.size());
  const int64_t cap = inst.capacity;
  if (static_cast<double>(n) * static_cast<double>(cap + 1) >
      static_cast<double>(kMaxTableCells)) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "Capacity DP would need ", n, " x ", cap + 1, " cells"));
  }
  std::vector<double> best(cap + 1, 0);
  std::vector<std::vector<bool>> take(n, std::vector<bool>(cap + 1, false));
  for (int i = 0; i < n; ++i) {
    const int64_t s = inst.sizes[i];
    if (s > cap) continue;
    for (int64_t c = cap; c >= s; --c) {
      const double cand = best[c - s] + inst.values[i];
      if (cand > best[c]) {
        best[c] = cand;
        take[i][c] = true;
      }
    }
  }
  KnapsackSolution sol;
  int64_t c = cap;
  for (int i = n - 1; i >= 0; --i) {
    if (take[i][c]) {
      sol.items.push_back(i);
      c -= inst.sizes[i];
    }
  }
  std::reverse(sol.items.begin(), sol.items.end());
  for (int i : sol.items) sol.value += inst.values[i];
  return sol;
}

absl::StatusOr<int64_t> ParseInt(const std::string& s) {
  size_t pos = 0;
  int64_t v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (...) {
    pos = 0;
  }
  if (s.empty() || pos != s.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("Expected an integer, got '", s, "'"));
  }
  return v;
}

absl::StatusOr<double> ParseReal(const std::string& s) {
  size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (...) {
    pos = 0;
  }
  if (s.empty() || pos != s.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("Expected a number, got '", s, "'"));
  }
  return v;
}

}  // namespace

absl::Status KnapsackInstance::Validate() const {
  if (capacity < 0) {
    return absl::InvalidArgumentError("Knapsack capacity must be nonnegative");
  }
  if (sizes.size() != values.size()) {
    return absl::InvalidArgumentError(
        "Knapsack sizes and values differ in length");
  }
  for (size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("Item ", i, " has nonpositive size ", sizes[i]));
    }
    if (!(values[i] >= 0) || !std::isfinite(values[i])) {
      return absl::InvalidArgumentError(
          absl::StrCat("Item ", i, " has invalid value ", values[i]));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<KnapsackSolution> KnapsackFptas(const KnapsackInstance& inst,
                                               double alpha) {
  DPB_RETURN_IF_ERROR(inst.Validate());
  if (!(alpha >= 0 && alpha < 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("alpha must lie in [0, 1), got ", alpha));
  }
  const int n = static_cast<int>(inst.sizes.size());
  double v_max = 0;
  for (int i = 0; i < n; ++i) {
    if (inst.sizes[i] <= inst.capacity) v_max = std::max(v_max, inst.values[i]);
  }
  if (n == 0 || v_max == 0) return KnapsackSolution{};
  if (alpha == 0) return SolveByCapacity(inst);

  const double mu = alpha * v_max / n;
  std::vector<int64_t> scaled(n, 0);
  int64_t total = 0;
  for (int i = 0; i < n; ++i) {
    if (inst.sizes[i] > inst.capacity) continue;
    scaled[i] = static_cast<int64_t>(std::floor(inst.values[i] / mu));
    total += scaled[i];
  }
  if (static_cast<double>(n) * static_cast<double>(total + 1) >
      static_cast<double>(kMaxTableCells)) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "Profit DP would need ", n, " x ", total + 1, " cells"));
  }
  // min_size[p]: smallest total size reaching scaled profit exactly p.
  constexpr int64_t kInf = std::numeric_limits<int64_t>::max();
  std::vector<int64_t> min_size(total + 1, kInf);
  min_size[0] = 0;
  std::vector<std::vector<bool>> take(n, std::vector<bool>(total + 1, false));
  int64_t reach = 0;
  for (int i = 0; i < n; ++i) {
    const int64_t p = scaled[i];
    if (inst.sizes[i] > inst.capacity) continue;
    for (int64_t q = reach; q >= 0; --q) {
      if (min_size[q] == kInf) continue;
      const int64_t cand = min_size[q] + inst.sizes[i];
      if (cand <= inst.capacity && cand < min_size[q + p]) {
        min_size[q + p] = cand;
        take[i][q + p] = true;
      }
    }
    reach += p;
  }
  int64_t best = 0;
  for (int64_t q = total; q >= 0; --q) {
    if (min_size[q] <= inst.capacity) {
      best = q;
      break;
    }
  }
  KnapsackSolution sol;
  int64_t q = best;
  for (int i = n - 1; i >= 0; --i) {
    if (take[i][q]) {
      sol.items.push_back(i);
      q -= scaled[i];
    }
  }
  std::reverse(sol.items.begin(), sol.items.end());
  for (int i : sol.items) sol.value += inst.values[i];
  return sol;
}

absl::StatusOr<KnapsackSolution> KnapsackExact(const KnapsackInstance& inst) {
  DPB_RETURN_IF_ERROR(inst.Validate());
  return SolveByCapacity(inst);
}

absl::StatusOr<KnapsackInstance> ParseKnapsack(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream tok(line.substr(0, line.find('#')));
    std::vector<std::string> row;
    std::string t;
    while (tok >> t) row.push_back(t);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty() || rows[0].size() != 2) {
    return absl::InvalidArgumentError("Knapsack header must be 'n B'");
  }
  DPB_ASSIGN_OR_RETURN(const int64_t n, ParseInt(rows[0][0]));
  KnapsackInstance inst;
  DPB_ASSIGN_OR_RETURN(inst.capacity, ParseInt(rows[0][1]));
  if (n < 0 || static_cast<int64_t>(rows.size()) - 1 != n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Header announces ", n, " items but ", rows.size() - 1, " were read"));
  }
  for (size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != 2) {
      return absl::InvalidArgumentError("Knapsack items must be 'size value'");
    }
    DPB_ASSIGN_OR_RETURN(const int64_t size, ParseInt(rows[r][0]));
    DPB_ASSIGN_OR_RETURN(const double value, ParseReal(rows[r][1]));
    inst.sizes.push_back(size);
    inst.values.push_back(value);
  }
  DPB_RETURN_IF_ERROR(inst.Validate());
  return inst;
}

absl::StatusOr<KnapsackInstance> LoadKnapsack(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("Cannot open ", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  absl::StatusOr<KnapsackInstance> inst = ParseKnapsack(buf.str());
  if (!inst.ok()) {
    return absl::Status(inst.status().code(),
                        absl::StrCat(path, ": ", inst.status().message()));
  }
  return inst;
}

KnapsackInstance RandomKnapsack(int n, int64_t max_size, int max_value,
                                Rng& rng) {
  KnapsackInstance inst;
  int64_t total = 0;
  for (int i = 0; i < n; ++i) {
    const int64_t s =
        1 + static_cast<int64_t>(rng.UniformInt(static_cast<uint64_t>(max_size)));
    inst.sizes.push_back(s);
    inst.values.push_back(static_cast<double>(
        rng.UniformInt(static_cast<uint64_t>(max_value) + 1)));
    total += s;
  }
  inst.capacity = total / 2;
  return inst;
}

KnapsackInstance KnapsackNeighbor(const KnapsackInstance& inst, Rng& rng) {
  KnapsackInstance out = inst;
  if (out.values.empty()) return out;
  const size_t i = rng.UniformInt(out.values.size());
  const double shift = rng.UniformOpen01();
  if (rng.Bernoulli(0.5) || out.values[i] < shift) {
    out.values[i] += shift;
  } else {
    out.values[i] -= shift;
  }
  return out;
}

}  // namespace dpb
