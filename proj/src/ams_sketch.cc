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

#include "dpb/ams_sketch.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpb/framework.h"

namespace dpb {
namespace {

constexpr int64_t kMaxCounters = int64_t{1} << 26;

uint64_t Reduce61(uint64_t x) {
  x = (x & kMersenne61) + (x >> 61);
  return x >= kMersenne61 ? x - kMersenne61 : x;
}

uint64_t ItemResidue(int64_t item) {
  return Reduce61(static_cast<uint64_t>(item));
}

}  // namespace

uint64_t MulMod61(uint64_t a, uint64_t b) {
  const unsigned __int128 prod = static_cast<unsigned __int128>(a) * b;
  const uint64_t lo = static_cast<uint64_t>(prod) & kMersenne61;
  const uint64_t hi = static_cast<uint64_t>(prod >> 61);
  return Reduce61(lo + hi);
}

int64_t AmsSketch::RowsFor(double fail_prob) {
  return static_cast<int64_t>(std::ceil(48 * std::log(2 / fail_prob)));
}

int64_t AmsSketch::ColsFor(double alpha) {
  return static_cast<int64_t>(std::ceil(16 / (alpha * alpha)));
}

absl::StatusOr<AmsSketch> AmsSketch::Create(double alpha, double fail_prob,
                                            Rng& rng) {
  if (!(alpha > 0 && alpha < 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("AMS sketch needs alpha in (0, 1), got ", alpha));
  }
  if (!(fail_prob > 0 && fail_prob < 1)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "AMS sketch needs fail_prob in (0, 1), got ", fail_prob));
  }
  return WithShape(RowsFor(fail_prob), ColsFor(alpha), rng);
}

absl::StatusOr<AmsSketch> AmsSketch::WithShape(int64_t rows, int64_t cols,
                                               Rng& rng) {
  if (rows < 1 || cols < 1) {
    return absl::InvalidArgumentError("AMS sketch shape must be positive");
  }
  if (rows > kMaxCounters / cols) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "AMS sketch with ", rows, " x ", cols, " counters is too large"));
  }
  auto hashes = std::make_shared<Hashes>();
  hashes->coeffs.resize(static_cast<size_t>(4 * rows * cols));
  for (uint64_t& c : hashes->coeffs) c = rng.UniformInt(kMersenne61);
  return AmsSketch(rows, cols, std::move(hashes));
}

AmsSketch::AmsSketch(int64_t rows, int64_t cols,
                     std::shared_ptr<const Hashes> hashes)
    : rows_(rows),
      cols_(cols),
      hashes_(std::move(hashes)),
      counters_(static_cast<size_t>(rows * cols), 0),
      row_squares_(static_cast<size_t>(rows), 0) {}

AmsSketch AmsSketch::Spawn() const { return AmsSketch(rows_, cols_, hashes_); }

int AmsSketch::Sign(int64_t index, int64_t item) const {
  const uint64_t x = ItemResidue(item);
  const uint64_t* a = &hashes_->coeffs[static_cast<size_t>(4 * index)];
  uint64_t h = a[3];
  h = Reduce61(MulMod61(h, x) + a[2]);
  h = Reduce61(MulMod61(h, x) + a[1]);
  h = Reduce61(MulMod61(h, x) + a[0]);
  return (h & 1) ? 1 : -1;
}

std::vector<int8_t> AmsSketch::Signs(int64_t item) const {
  const uint64_t x1 = ItemResidue(item);
  const uint64_t x2 = MulMod61(x1, x1);
  const uint64_t x3 = MulMod61(x2, x1);
  const int64_t total = num_counters();
  std::vector<int8_t> out(static_cast<size_t>(total));
  const uint64_t* a = hashes_->coeffs.data();
  for (int64_t i = 0; i < total; ++i, a += 4) {
    uint64_t h = Reduce61(a[0] + MulMod61(a[1], x1));
    h = Reduce61(h + MulMod61(a[2], x2));
    h = Reduce61(h + MulMod61(a[3], x3));
    out[static_cast<size_t>(i)] = (h & 1) ? 1 : -1;
  }
  return out;
}

void AmsSketch::Update(int64_t item, int64_t delta) {
  if (delta == 0) return;
  Apply(Signs(item), delta);
}

void AmsSketch::Apply(const std::vector<int8_t>& signs, int64_t delta) {
  int64_t* z = counters_.data();
  const int8_t* s = signs.data();
  for (int64_t j = 0; j < rows_; ++j) {
    // (z + s d)^2 - z^2 = 2 s d z + d^2 since s^2 = 1.
    int64_t dot = 0;
    for (int64_t k = 0; k < cols_; ++k) {
      dot += s[k] * z[k];
      z[k] += s[k] * delta;
    }
    row_squares_[static_cast<size_t>(j)] += 2 * delta * dot + cols_ * delta * delta;
    z += cols_;
    s += cols_;
  }
}

void AmsSketch::Ingest(const UpdateStream& stream) {
  std::map<int64_t, int64_t> net;
  for (const dpb::Update& u : stream.updates) net[u.item] += u.delta;
  for (const auto& [item, delta] : net) Update(item, delta);
}

double AmsSketch::RowEstimate(int64_t row) const {
  return static_cast<double>(row_squares_[static_cast<size_t>(row)]) /
         static_cast<double>(cols_);
}

double AmsSketch::Estimate() const {
  std::vector<double> rows(static_cast<size_t>(rows_));
  for (int64_t j = 0; j < rows_; ++j) rows[static_cast<size_t>(j)] = RowEstimate(j);
  return Median(std::move(rows));
}

}  // namespace dpb
