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

#include "dpb/kmv_sketch.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpb/framework.h"

namespace dpb {
namespace {

constexpr double kHashUnit = 1.0 / 9007199254740992.0;  // 2^-53
constexpr int64_t kMaxCopies = int64_t{1} << 20;

}  // namespace

int64_t KmvSketch::KFor(double alpha) {
  return static_cast<int64_t>(std::ceil(16 / (alpha * alpha)));
}

int64_t KmvSketch::CopiesFor(double fail_prob) {
  return static_cast<int64_t>(std::ceil(12 * std::log(2 / fail_prob)));
}

absl::StatusOr<KmvSketch> KmvSketch::Create(double alpha, double fail_prob,
                                            Rng& rng, StreamMode mode) {
  if (mode == StreamMode::kTurnstile) {
    return absl::InvalidArgumentError(
        "KMV sketches support insertion-only streams");
  }
  if (!(alpha > 0 && alpha < 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("KMV sketch needs alpha in (0, 1), got ", alpha));
  }
  if (!(fail_prob > 0 && fail_prob < 1)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "KMV sketch needs fail_prob in (0, 1), got ", fail_prob));
  }
  return WithShape(KFor(alpha), CopiesFor(fail_prob), rng);
}

absl::StatusOr<KmvSketch> KmvSketch::WithShape(int64_t k, int64_t copies,
                                               Rng& rng) {
  if (k < 2 || copies < 1) {
    return absl::InvalidArgumentError("KMV sketch needs k >= 2, copies >= 1");
  }
  // Retained lists grow on demand up to min(k, distinct items), so only the
  // copy count is bounded here.
  if (copies > kMaxCopies) {
    return absl::ResourceExhaustedError(
        absl::StrCat("KMV sketch with ", copies, " copies is too large"));
  }
  auto seeds = std::make_shared<std::vector<uint64_t>>(copies);
  for (uint64_t& s : *seeds) s = rng.NextU64();
  return KmvSketch(k, std::move(seeds));
}

KmvSketch::KmvSketch(int64_t k,
                     std::shared_ptr<const std::vector<uint64_t>> seeds)
    : k_(k),
      copies_(static_cast<int64_t>(seeds->size())),
      seeds_(std::move(seeds)),
      retained_(static_cast<size_t>(copies_)),
      copy_estimates_(static_cast<size_t>(copies_), 0) {}

KmvSketch KmvSketch::Spawn() const { return KmvSketch(k_, seeds_); }

std::vector<uint64_t> KmvSketch::Hashes(int64_t item) const {
  std::vector<uint64_t> out(static_cast<size_t>(copies_));
  for (int64_t c = 0; c < copies_; ++c) {
    const uint64_t h = Mix64(static_cast<uint64_t>(item) ^ (*seeds_)[c]);
    out[static_cast<size_t>(c)] = (h >> 11) + 1;
  }
  return out;
}

void KmvSketch::Insert(int64_t item) { Apply(Hashes(item)); }

void KmvSketch::Apply(const std::vector<uint64_t>& hashes) {
  for (int64_t c = 0; c < copies_; ++c) {
    std::vector<uint64_t>& kept = retained_[static_cast<size_t>(c)];
    const uint64_t h = hashes[static_cast<size_t>(c)];
    const bool full = static_cast<int64_t>(kept.size()) >= k_;
    if (full && h >= kept.back()) continue;
    auto it = std::lower_bound(kept.begin(), kept.end(), h);
    if (it != kept.end() && *it == h) continue;
    kept.insert(it, h);
    if (static_cast<int64_t>(kept.size()) > k_) kept.pop_back();
    copy_estimates_[static_cast<size_t>(c)] = CopyEstimate(c);
    dirty_ = true;
  }
}

absl::Status KmvSketch::Ingest(const UpdateStream& stream) {
  if (stream.mode != StreamMode::kInsertOnly) {
    return absl::InvalidArgumentError(
        "KMV sketches support insertion-only streams");
  }
  for (const Update& u : stream.updates) Insert(u.item);
  return absl::OkStatus();
}

double KmvSketch::CopyEstimate(int64_t copy) const {
  const std::vector<uint64_t>& kept = retained_[static_cast<size_t>(copy)];
  if (static_cast<int64_t>(kept.size()) < k_) {
    return static_cast<double>(kept.size());
  }
  return static_cast<double>(k_ - 1) /
         (static_cast<double>(kept.back()) * kHashUnit);
}

double KmvSketch::Estimate() const {
  if (dirty_) {
    estimate_ = Median(copy_estimates_);
    dirty_ = false;
  }
  return estimate_;
}

int64_t KmvSketch::space_words() const {
  int64_t words = copies_;
  for (const auto& kept : retained_) words += static_cast<int64_t>(kept.size());
  return words;
}

}  // namespace dpb
