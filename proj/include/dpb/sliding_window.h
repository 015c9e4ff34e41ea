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

#ifndef DPB_SLIDING_WINDOW_H_
#define DPB_SLIDING_WINDOW_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "dpb/ams_sketch.h"
#include "dpb/kmv_sketch.h"

namespace dpb {

struct SmoothnessParams {
  double rho = 0;
  double xi = 0;

  absl::Status Validate() const;
};

// Distinct elements are (rho, rho)-smooth.
double SmoothnessXiDistinct(double rho);
// F2 is (rho, rho^2 / 2)-smooth.
double SmoothnessXiF2(double rho);

// Failure probability to give each sketch instance so that the union over
// the m updates and up to max_instances live instances stays below target.
double HistogramSketchFailProb(double target, int64_t m,
                               int64_t max_instances);

// Sketch adapters. Each offers Prepare(item) -> Prepared, Apply(prepared),
// Estimate(), Spawn() (an empty instance sharing randomness), and
// space_words(). Prepare is computed once per update and applied to every
// live instance.

class ExactDistinctAdapter {
 public:
  using Prepared = int64_t;
  Prepared Prepare(int64_t item) const { return item; }
  void Apply(Prepared item) { seen_.insert(item); }
  double Estimate() const { return static_cast<double>(seen_.size()); }
  ExactDistinctAdapter Spawn() const { return {}; }
  int64_t space_words() const { return static_cast<int64_t>(seen_.size()); }

 private:
  std::unordered_set<int64_t> seen_;
};

class ExactF2Adapter {
 public:
  using Prepared = int64_t;
  Prepared Prepare(int64_t item) const { return item; }
  void Apply(Prepared item) {
    int64_t& f = freq_[item];
    f2_ += 2 * f + 1;
    ++f;
  }
  double Estimate() const { return static_cast<double>(f2_); }
  ExactF2Adapter Spawn() const { return {}; }
  int64_t space_words() const { return static_cast<int64_t>(freq_.size()); }

 private:
  std::unordered_map<int64_t, int64_t> freq_;
  int64_t f2_ = 0;
};

class KmvAdapter {
 public:
  using Prepared = std::vector<uint64_t>;
  explicit KmvAdapter(KmvSketch sketch) : sketch_(std::move(sketch)) {}
  Prepared Prepare(int64_t item) const { return sketch_.Hashes(item); }
  void Apply(const Prepared& hashes) { sketch_.Apply(hashes); }
  double Estimate() const { return sketch_.Estimate(); }
  KmvAdapter Spawn() const { return KmvAdapter(sketch_.Spawn()); }
  int64_t space_words() const { return sketch_.space_words(); }

 private:
  KmvSketch sketch_;
};

class AmsAdapter {
 public:
  using Prepared = std::vector<int8_t>;
  explicit AmsAdapter(AmsSketch sketch) : sketch_(std::move(sketch)) {}
  Prepared Prepare(int64_t item) const { return sketch_.Signs(item); }
  void Apply(const Prepared& signs) {
    sketch_.Apply(signs, 1);
    estimate_ = sketch_.Estimate();
  }
  double Estimate() const { return estimate_; }
  AmsAdapter Spawn() const { return AmsAdapter(sketch_.Spawn()); }
  int64_t space_words() const { return sketch_.num_counters(); }

 private:
  AmsSketch sketch_;
  double estimate_ = 0;
};

// Sliding-window estimator over the last `window` updates of an
// insertion-only stream, built from sketch instances started at increasing
// stream positions. After every update, for each instance i the instances
// strictly between i and the last j >= i + 2 with est(j) >= (1 - xi) est(i)
// are dropped, and every instance but the newest one starting at or before
// clock - window is expired.
template <typename Sketch>
class SmoothHistogram {
 public:
  struct Instance {
    // 1-based index of the first update the instance has seen.
    int64_t start;
    Sketch sketch;
    double estimate;
  };

  static absl::StatusOr<SmoothHistogram> Create(int64_t window,
                                                SmoothnessParams params,
                                                Sketch prototype) {
    if (window < 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("Window must be positive, got ", window));
    }
    if (absl::Status s = params.Validate(); !s.ok()) return s;
    return SmoothHistogram(window, params, std::move(prototype));
  }

  void Update(int64_t item) {
    const int64_t t = clock_ + 1;
    instances_.push_back({t, prototype_.Spawn(), 0.0});
    const typename Sketch::Prepared prepared = prototype_.Prepare(item);
    for (Instance& inst : instances_) {
      inst.sketch.Apply(prepared);
      inst.estimate = inst.sketch.Estimate();
    }
    clock_ = t;
    Prune();
    while (instances_.size() >= 2 && instances_[1].start <= clock_ - window_) {
      instances_.erase(instances_.begin());
    }
    max_instances_ = std::max(max_instances_, instances_.size());
  }

  // Estimate of the earliest instance lying inside the window, or of the
  // straddling instance when it is the only one.
  absl::StatusOr<double> Query() const {
    if (instances_.empty()) {
      return absl::FailedPreconditionError(
          "Query before any update was ingested");
    }
    for (const Instance& inst : instances_) {
      if (inst.start > clock_ - window_) return inst.estimate;
    }
    return instances_.back().estimate;
  }

  // (4 / xi) log2(max estimate + 2) + 2.
  double InstanceBound() const {
    double top = 0;
    for (const Instance& inst : instances_) top = std::max(top, inst.estimate);
    return 4 / params_.xi * std::log2(top + 2) + 2;
  }

  const std::vector<Instance>& instances() const { return instances_; }
  size_t num_instances() const { return instances_.size(); }
  size_t max_instances_seen() const { return max_instances_; }
  int64_t clock() const { return clock_; }
  int64_t window() const { return window_; }
  const SmoothnessParams& params() const { return params_; }

  int64_t space_words() const {
    int64_t words = 0;
    for (const Instance& inst : instances_) words += inst.sketch.space_words();
    return words;
  }

 private:
  SmoothHistogram(int64_t window, SmoothnessParams params, Sketch prototype)
      : window_(window), params_(params), prototype_(std::move(prototype)) {}

  // Applies "delete everything strictly between i and the last j >= i + 2
  // with est(j) >= (1 - xi) est(i)" from the oldest instance on. One pass
  // reaches a fixed point: afterwards no such j exists for any i.
  void Prune() {
    const size_t n = instances_.size();
    if (n < 3) return;
    // suffix_max[p] = max estimate over positions p..n-1; it is
    // non-increasing, so the last p >= i + 2 with suffix_max[p] >= floor is
    // also the last position whose own estimate reaches floor.
    std::vector<double> suffix_max(n);
    suffix_max[n - 1] = instances_[n - 1].estimate;
    for (size_t p = n - 1; p-- > 0;) {
      suffix_max[p] = std::max(suffix_max[p + 1], instances_[p].estimate);
    }
    const double keep = 1 - params_.xi;
    std::vector<Instance> kept;
    kept.reserve(n);
    size_t i = 0;
    while (i < n) {
      const double floor = keep * instances_[i].estimate;
      size_t next = i + 1;
      if (i + 2 < n && suffix_max[i + 2] >= floor) {
        // Largest j in [i + 2, n) with suffix_max[j] >= floor.
        size_t lo = i + 2, hi = n - 1;
        while (lo < hi) {
          const size_t mid = lo + (hi - lo + 1) / 2;
          if (suffix_max[mid] >= floor) {
            lo = mid;
          } else {
            hi = mid - 1;
          }
        }
        next = lo;
      }
      kept.push_back(std::move(instances_[i]));
      i = next;
    }
    instances_ = std::move(kept);
  }

  int64_t window_;
  SmoothnessParams params_;
  Sketch prototype_;
  std::vector<Instance> instances_;
  int64_t clock_ = 0;
  size_t max_instances_ = 0;
};

}  // namespace dpb

#endif  // DPB_SLIDING_WINDOW_H_
