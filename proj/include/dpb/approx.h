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

#ifndef DPB_APPROX_H_
#define DPB_APPROX_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpb/rng.h"

namespace dpb {

// Accuracy request handed to a tunable approximation: with probability at
// least 1 - fail_prob the answer lies in
//   [(1 - alpha) f - kappa, (1 + alpha) f + kappa].
struct ApproxParams {
  double alpha = 0;
  double kappa = 0;
  double fail_prob = 0;
};

absl::Status ValidateApproxParams(const ApproxParams& params);

// Privacy and accuracy targets for the wrappers.
struct WrapConfig {
  double epsilon = 1;
  double delta = 0.01;
  double alpha = 0;
  double kappa = 0;
  // Global sensitivity of the wrapped function.
  double delta_f = 0;
  // Tail parameter of the accuracy statement.
  double gamma = 1;
  // Additive target passed to the substrate. Defaults to kappa.
  std::optional<double> tau_override;

  double tau() const { return tau_override.value_or(kappa); }

  // Checks the (epsilon, delta)-wrapper invariants.
  absl::Status Validate() const;
  // Same, but delta is ignored (the Cauchy wrapper is pure).
  absl::Status ValidatePure() const;
};

// Work counters accumulated by a substrate across evaluations.
struct ResourceMeter {
  int64_t calls = 0;
  int64_t queries = 0;
  int64_t space_words = 0;
  int64_t items_processed = 0;

  ResourceMeter& operator+=(const ResourceMeter& other) {
    calls += other.calls;
    queries += other.queries;
    space_words += other.space_words;
    items_processed += other.items_processed;
    return *this;
  }
};

// A tunable approximation A_f of some f : Dataset -> R+.
//
// `evaluate` must honour the ApproxParams contract for every setting. A
// substrate that only reaches a constant success probability regardless of
// the requested fail_prob reports it in `fixed_fail_prob`; wrap it with
// MedianBoost before handing it to WrapLaplace. Deterministic substrates have
// failure probability zero and must ignore the generator.
template <typename Dataset>
struct TunableSubstrate {
  using EvaluateFn = std::function<absl::StatusOr<double>(
      const Dataset&, const ApproxParams&, Rng&, ResourceMeter&)>;

  std::string name;
  EvaluateFn evaluate;
  bool deterministic = false;
  std::optional<double> fixed_fail_prob;
  ResourceMeter meter;

  absl::StatusOr<double> Evaluate(const Dataset& data,
                                  const ApproxParams& params, Rng& rng) {
    ++meter.calls;
    return evaluate(data, params, rng, meter);
  }

  // Failure probability actually guaranteed when `requested` is asked for.
  double EffectiveFailProb(double requested) const {
    if (deterministic) return 0;
    return fixed_fail_prob.value_or(requested);
  }
};

// Internals of one wrapper invocation. The trace reveals the non-private
// substrate value and must never be released by a DP deployment; it exists
// for tests and the audit harness.
struct MechanismTrace {
  double substrate_value = 0;
  double rho = 0;
  double tau = 0;
  double noise_scale = 0;
  double noise_draw = 0;
  double output = 0;
};

struct WrappedOutput {
  double output = 0;
  MechanismTrace trace;
};

// Closed interval.
struct Interval {
  double lo = 0;
  double hi = 0;
  bool Contains(double x) const { return lo <= x && x <= hi; }
};

}  // namespace dpb

#endif  // DPB_APPROX_H_
