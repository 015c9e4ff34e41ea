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

#ifndef DPB_DP_AUDIT_H_
#define DPB_DP_AUDIT_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "dpb/rng.h"
#include "dpb/status_macros.h"

namespace dpb {

// Histogram test of the privacy inequality on one neighboring pair. The
// estimate can refute a privacy claim but never certify one.
struct AuditConfig {
  int64_t trials = 100000;
  int bins = 40;
  // Additive slack of the (epsilon, delta) inequality; zero for pure DP.
  double delta_slack = 0;
  // Claimed epsilon, used only to flag bins.
  double claimed_epsilon = 1;
  // One-sided normal quantile of the Wilson intervals.
  double z = 1.645;
  // Bin range is the pooled [q, 1 - q] quantile range.
  double clip_quantile = 0.001;
};

struct BinRatio {
  int bin = 0;
  double lo = 0;
  double hi = 0;
  int64_t count_d = 0;
  int64_t count_d_prime = 0;
  // |ln(p / p')| on the empirical masses.
  double log_ratio = 0;
  // Upper and lower confidence bounds on |ln(p / p')|.
  double log_ratio_upper = 0;
  double log_ratio_lower = 0;
  // Both masses clear the floor delta_slack + 3 sigma.
  bool eligible = false;
};

struct AuditReport {
  double epsilon_hat = 0;
  double delta_slack = 0;
  int64_t trials = 0;
  int bins = 0;
  std::vector<BinRatio> per_bin_ratios;
  // Eligible bins whose lower confidence bound exceeds the claimed epsilon.
  std::vector<int> flagged_bins;
  // Every output was the same value.
  bool degenerate = false;

  std::string ToJson() const;
};

// Audits from already drawn outputs on the two inputs.
absl::StatusOr<AuditReport> AuditSamples(const std::vector<double>& on_d,
                                         const std::vector<double>& on_d_prime,
                                         const AuditConfig& cfg);

// Runs `mech(dataset, rng)` cfg.trials times on each input with independent
// per-trial generators and audits the outputs. `mech` returns
// absl::StatusOr<double>.
template <typename Dataset, typename Mechanism>
absl::StatusOr<AuditReport> EstimateEpsilon(Mechanism&& mech, const Dataset& d,
                                            const Dataset& d_prime,
                                            const AuditConfig& cfg,
                                            RngSeed seed) {
  if (cfg.trials < 1000) {
    return absl::InvalidArgumentError("An audit needs at least 1000 trials");
  }
  std::vector<double> a, b;
  a.reserve(static_cast<size_t>(cfg.trials));
  b.reserve(static_cast<size_t>(cfg.trials));
  for (int64_t t = 0; t < cfg.trials; ++t) {
    Rng ra = Rng::ForStream(seed, static_cast<uint64_t>(2 * t));
    DPB_ASSIGN_OR_RETURN(const double x, mech(d, ra));
    a.push_back(x);
    Rng rb = Rng::ForStream(seed, static_cast<uint64_t>(2 * t + 1));
    DPB_ASSIGN_OR_RETURN(const double y, mech(d_prime, rb));
    b.push_back(y);
  }
  return AuditSamples(a, b, cfg);
}

}  // namespace dpb

#endif  // DPB_DP_AUDIT_H_
