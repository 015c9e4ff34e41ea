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

#ifndef DPB_KMV_SKETCH_H_
#define DPB_KMV_SKETCH_H_

#include <cstdint>
#include <memory>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpb/rng.h"
#include "dpb/stream.h"

namespace dpb {

// k-minimum-values distinct-elements sketch for insertion-only streams.
// Each copy hashes items to (0, 1] and keeps the k smallest distinct hash
// values; its estimate is the exact count below k and (k - 1) / v_k once k
// values are held. The sketch reports the median over the copies.
class KmvSketch {
 public:
  // k = ceil(16 / alpha^2), copies = ceil(12 ln(2 / fail_prob)).
  // Turnstile streams are rejected: deletions cannot be undone in a KMV set.
  static absl::StatusOr<KmvSketch> Create(
      double alpha, double fail_prob, Rng& rng,
      StreamMode mode = StreamMode::kInsertOnly);
  static absl::StatusOr<KmvSketch> WithShape(int64_t k, int64_t copies,
                                             Rng& rng);

  static int64_t KFor(double alpha);
  static int64_t CopiesFor(double fail_prob);

  // Empty sketch sharing this one's hash functions.
  KmvSketch Spawn() const;

  int64_t k() const { return k_; }
  int64_t copies() const { return copies_; }

  // Hash of `item` under every copy, in units of 2^-53 (1 .. 2^53).
  std::vector<uint64_t> Hashes(int64_t item) const;

  void Insert(int64_t item);
  void Apply(const std::vector<uint64_t>& hashes);
  absl::Status Ingest(const UpdateStream& stream);

  double Estimate() const;
  double CopyEstimate(int64_t copy) const;

  // Retained hash values of one copy, ascending; size <= k.
  const std::vector<uint64_t>& retained(int64_t copy) const {
    return retained_[static_cast<size_t>(copy)];
  }
  int64_t space_words() const;

 private:
  KmvSketch(int64_t k, std::shared_ptr<const std::vector<uint64_t>> seeds);

  int64_t k_;
  int64_t copies_;
  std::shared_ptr<const std::vector<uint64_t>> seeds_;
  std::vector<std::vector<uint64_t>> retained_;
  mutable std::vector<double> copy_estimates_;
  mutable double estimate_ = 0;
  mutable bool dirty_ = false;
};

}  // namespace dpb

#endif  // DPB_KMV_SKETCH_H_
