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

#ifndef DPB_AMS_SKETCH_H_
#define DPB_AMS_SKETCH_H_

#include <cstdint>
#include <memory>
#include <vector>

#include "absl/status/statusor.h"
#include "dpb/rng.h"
#include "dpb/stream.h"

namespace dpb {

// Arithmetic modulo the Mersenne prime 2^61 - 1.
inline constexpr uint64_t kMersenne61 = (uint64_t{1} << 61) - 1;
uint64_t MulMod61(uint64_t a, uint64_t b);

// Second-moment sketch for turnstile streams. Counter (j, k) holds
// sum_i sigma_jk(i) * freq(i) for a 4-wise independent sign function sigma_jk
// given by a random cubic polynomial over GF(2^61 - 1). The estimate is the
// median over the rows of the mean over the columns of the squared counters.
class AmsSketch {
 public:
  // rows = ceil(48 ln(2 / fail_prob)), cols = ceil(16 / alpha^2).
  static absl::StatusOr<AmsSketch> Create(double alpha, double fail_prob,
                                          Rng& rng);
  static absl::StatusOr<AmsSketch> WithShape(int64_t rows, int64_t cols,
                                             Rng& rng);

  static int64_t RowsFor(double fail_prob);
  static int64_t ColsFor(double alpha);

  // Empty sketch sharing this one's sign functions.
  AmsSketch Spawn() const;

  int64_t rows() const { return rows_; }
  int64_t cols() const { return cols_; }
  int64_t num_counters() const { return rows_ * cols_; }

  // Sign of counter `index` (row-major) for `item`.
  int Sign(int64_t index, int64_t item) const;
  // All rows * cols signs for `item`, as +1 / -1.
  std::vector<int8_t> Signs(int64_t item) const;

  void Update(int64_t item, int64_t delta);
  // Applies precomputed signs; equivalent to Update(item, delta).
  void Apply(const std::vector<int8_t>& signs, int64_t delta);
  // Feeds the stream with duplicate items coalesced first; the counters equal
  // those of update-by-update ingestion.
  void Ingest(const UpdateStream& stream);

  double Estimate() const;
  // Mean of the squared counters of one row.
  double RowEstimate(int64_t row) const;

  const std::vector<int64_t>& counters() const { return counters_; }

 private:
  struct Hashes {
    // Four coefficients per counter, row-major.
    std::vector<uint64_t> coeffs;
  };

  AmsSketch(int64_t rows, int64_t cols, std::shared_ptr<const Hashes> hashes);

  int64_t rows_;
  int64_t cols_;
  std::shared_ptr<const Hashes> hashes_;
  std::vector<int64_t> counters_;
  // Per-row sum of squared counters, kept exact.
  std::vector<int64_t> row_squares_;
};

}  // namespace dpb

#endif  // DPB_AMS_SKETCH_H_
