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

#ifndef DPB_RNG_H_
#define DPB_RNG_H_

#include <cstdint>
#include <random>

namespace dpb {

// 64-bit seed. Identical seeds yield identical sequences on every platform:
// the engine is std::mt19937_64, whose output sequence is fixed by the
// standard, and all conversions to doubles and integers are done here rather
// than through the implementation-defined <random> distributions.
struct RngSeed {
  uint64_t value = 0;
};

// SplitMix64 finalizer. Used for seed derivation and as a fast item hash.
uint64_t Mix64(uint64_t x);

class Rng {
 public:
  explicit Rng(RngSeed seed, uint64_t stream = 0);

  // Independent generator for sub-stream `stream` of this seed.
  static Rng ForStream(RngSeed seed, uint64_t stream) {
    return Rng(seed, stream);
  }

  uint64_t NextU64() { return engine_(); }

  // Uniform on the open interval (0, 1).
  double UniformOpen01();

  // Uniform integer in [0, n). Requires n > 0.
  uint64_t UniformInt(uint64_t n);

  bool Bernoulli(double p) { return UniformOpen01() < p; }

  // Derives a child generator; advances this one.
  Rng Fork();

 private:
  std::mt19937_64 engine_;
};

}  // namespace dpb

#endif  // DPB_RNG_H_
