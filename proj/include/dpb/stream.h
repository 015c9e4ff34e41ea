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

#ifndef DPB_STREAM_H_
#define DPB_STREAM_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dpb/rng.h"

namespace dpb {

enum class StreamMode { kInsertOnly, kTurnstile };

struct Update {
  int64_t item = 0;
  int64_t delta = 1;

  bool operator==(const Update& o) const {
    return item == o.item && delta == o.delta;
  }
};

// Updates over the universe [0, universe_size). Insertion-only streams carry
// delta = +1 throughout; turnstile updates are +1 or -1.
struct UpdateStream {
  int64_t universe_size = 0;
  StreamMode mode = StreamMode::kInsertOnly;
  std::vector<Update> updates;

  int64_t length() const { return static_cast<int64_t>(updates.size()); }
  absl::Status Validate() const;
};

// Final frequency vector.
std::vector<int64_t> Frequencies(const UpdateStream& s);
// Frequencies of updates[begin, end).
std::vector<int64_t> Frequencies(const UpdateStream& s, int64_t begin,
                                 int64_t end);

double SecondMoment(const std::vector<int64_t>& freq);
double L2Norm(const std::vector<int64_t>& freq);
int64_t DistinctCount(const std::vector<int64_t>& freq);

// Text format: "n m mode" with mode insert|turnstile, then m lines
// "item delta"; '#' starts a comment.
absl::StatusOr<UpdateStream> ParseStream(const std::string& text);
absl::StatusOr<UpdateStream> LoadStream(const std::string& path);
std::string SerializeStream(const UpdateStream& s);

// Copy of s with one uniformly chosen update replaced by a different legal
// update. InvalidArgument on an empty stream.
absl::StatusOr<UpdateStream> StreamNeighbor(const UpdateStream& s, Rng& rng);

// Insertion-only stream of m draws from a Zipf(exponent) law over [0, n).
UpdateStream ZipfStream(int64_t n, int64_t m, double exponent, Rng& rng);
// Insertion-only stream of m uniform draws over [0, n).
UpdateStream UniformStream(int64_t n, int64_t m, Rng& rng);
// Turnstile stream of m uniform +-1 updates over [0, n).
UpdateStream RandomTurnstileStream(int64_t n, int64_t m, Rng& rng);

}  // namespace dpb

#endif  // DPB_STREAM_H_
