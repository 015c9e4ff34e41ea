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

#ifndef DPB_FRAMEWORK_H_
#define DPB_FRAMEWORK_H_

#include <cmath>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "dpb/approx.h"
#include "dpb/rng.h"
#include "dpb/status_macros.h"

namespace dpb {

// Multiplicative target for the substrate under the Laplace wrapper,
//   rho = epsilon * alpha / (12 ln(4 / delta)).
// With alpha <= 1 this keeps 6 rho <= epsilon / (2 ln(4 / delta)), the
// smoothness requirement of Laplace smooth-sensitivity noise.
absl::StatusOr<double> TuneRhoLaplace(double alpha, double epsilon,
                                      double delta);

// rho = epsilon * alpha / 36, so 6 rho <= epsilon / 6 (Cauchy requirement).
absl::StatusOr<double> TuneRhoCauchy(double alpha, double epsilon);

// Smooth upper bound 4 rho x + 4 tau + delta_f on the local sensitivity of a
// (rho, tau)-accurate value x.
double SmoothBound(double x, double rho, double tau, double delta_f);

// Noise scales of the two wrappers for a substrate value x.
double LaplaceNoiseScale(double x, double rho, double tau, double delta_f,
                         double epsilon);
double CauchyNoiseScale(double x, double rho, double tau, double delta_f,
                        double epsilon);

namespace internal {

// Adds the wrapper's noise to an already computed substrate value.
WrappedOutput AddLaplaceNoise(double x, double rho, double tau,
                              const WrapConfig& cfg, Rng& rng);
WrappedOutput AddCauchyNoise(double x, double rho, double tau,
                             const WrapConfig& cfg, Rng& rng);

absl::Status CheckSubstrateValue(double x);

}  // namespace internal

// (epsilon, delta(1 + e^{epsilon/2}) + delta/2)-DP release of a tunable
// approximation: run the substrate once with ApproxParams(rho, tau, delta/2)
// and add Lap(2 (4 rho x + 4 tau + delta_f) / epsilon).
template <typename Dataset>
absl::StatusOr<WrappedOutput> WrapLaplace(TunableSubstrate<Dataset>& substrate,
                                          const Dataset& data,
                                          const WrapConfig& cfg, Rng& rng) {
  DPB_RETURN_IF_ERROR(cfg.Validate());
  DPB_ASSIGN_OR_RETURN(const double rho,
                       TuneRhoLaplace(cfg.alpha, cfg.epsilon, cfg.delta));
  const double tau = cfg.tau();
  const ApproxParams params{rho, tau, cfg.delta / 2};
  if (substrate.EffectiveFailProb(params.fail_prob) > params.fail_prob) {
    return absl::FailedPreconditionError(absl::StrCat(
        "Substrate '", substrate.name, "' only guarantees failure probability ",
        substrate.EffectiveFailProb(params.fail_prob), " but ",
        params.fail_prob, " is required; boost it with MedianBoost first"));
  }
  DPB_ASSIGN_OR_RETURN(const double x, substrate.Evaluate(data, params, rng));
  DPB_RETURN_IF_ERROR(internal::CheckSubstrateValue(x));
  return internal::AddLaplaceNoise(x, rho, tau, cfg, rng);
}

// Pure epsilon-DP release of a deterministic tunable approximation: run it
// with ApproxParams(rho, tau, 0) and add C(6 (4 rho x + 4 tau + delta_f) /
// epsilon). cfg.delta is not used.
template <typename Dataset>
absl::StatusOr<WrappedOutput> WrapCauchy(TunableSubstrate<Dataset>& substrate,
                                         const Dataset& data,
                                         const WrapConfig& cfg, Rng& rng) {
  DPB_RETURN_IF_ERROR(cfg.ValidatePure());
  if (!substrate.deterministic) {
    return absl::FailedPreconditionError(
        absl::StrCat("The Cauchy wrapper needs a deterministic substrate; '",
                     substrate.name, "' is randomized"));
  }
  DPB_ASSIGN_OR_RETURN(const double rho,
                       TuneRhoCauchy(cfg.alpha, cfg.epsilon));
  const double tau = cfg.tau();
  DPB_ASSIGN_OR_RETURN(const double x,
                       substrate.Evaluate(data, {rho, tau, 0.0}, rng));
  DPB_RETURN_IF_ERROR(internal::CheckSubstrateValue(x));
  return internal::AddCauchyNoise(x, rho, tau, cfg, rng);
}

// Number of independent copies whose median fails with probability at most
// target_fail when each copy fails with probability at most 1/3:
//   ceil(18 ln(2 / target_fail)).
int MedianReplications(double target_fail);

// Median of the values; the mean of the two middle elements for even sizes.
double Median(std::vector<double> values);

// Runs `base` MedianReplications(target_fail) times per evaluation and
// returns the median. The boosted substrate guarantees target_fail and its
// meter accumulates the work of every copy. A base that already meets the
// target (deterministic, tunable, or fixed_fail_prob <= target_fail) is
// returned unchanged.
template <typename Dataset>
absl::StatusOr<TunableSubstrate<Dataset>> MedianBoost(
    TunableSubstrate<Dataset> base, double target_fail) {
  if (!(target_fail > 0 && target_fail < 1.0 / 3)) {
    return absl::InvalidArgumentError(
        absl::StrCat("target_fail must lie in (0, 1/3), got ", target_fail));
  }
  if (base.deterministic || !base.fixed_fail_prob.has_value() ||
      target_fail >= *base.fixed_fail_prob) {
    return base;
  }
  if (*base.fixed_fail_prob > 1.0 / 3) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Median boosting needs base failure probability <= 1/3, got ",
        *base.fixed_fail_prob));
  }
  const int copies = MedianReplications(target_fail);
  TunableSubstrate<Dataset> boosted;
  boosted.name = absl::StrCat(base.name, "+median", copies);
  boosted.deterministic = false;
  boosted.fixed_fail_prob = target_fail;
  boosted.evaluate = [inner = std::move(base.evaluate), copies](
                         const Dataset& data, const ApproxParams& params,
                         Rng& rng,
                         ResourceMeter& meter) -> absl::StatusOr<double> {
    std::vector<double> values;
    values.reserve(copies);
    for (int i = 0; i < copies; ++i) {
      DPB_ASSIGN_OR_RETURN(const double v, inner(data, params, rng, meter));
      values.push_back(v);
    }
    return Median(std::move(values));
  };
  return boosted;
}

// Grid {0, g, 2g, ..., (num_points - 1) g} with num_points = floor(M/g) + 1.
class GridSpec {
 public:
  static absl::StatusOr<GridSpec> Create(double range_max, double spacing);

  double range_max() const { return range_max_; }
  double spacing() const { return spacing_; }
  int64_t num_points() const { return num_points_; }
  double Point(int64_t i) const { return static_cast<double>(i) * spacing_; }

 private:
  GridSpec(double range_max, double spacing, int64_t num_points)
      : range_max_(range_max), spacing_(spacing), num_points_(num_points) {}

  double range_max_;
  double spacing_;
  int64_t num_points_;
};

// Probability of the uniform fallback that turns an (epsilon, delta)-DP
// release on a grid of `num_points` values into a pure epsilon-DP one:
//   p = delta |R| / (e^epsilon - 1 + delta |R|).
double PureDpFallbackProbability(double epsilon, double delta,
                                 int64_t num_points);

struct GridRelease {
  double output = 0;
  bool fallback = false;
  // The input was negative (or above range_max) and was clamped.
  bool clamped = false;
};

// Rounds an (epsilon, delta)-DP value up onto the grid and, with probability
// PureDpFallbackProbability, replaces it by a uniformly random grid point.
absl::StatusOr<GridRelease> ToPureDp(double value, const GridSpec& grid,
                                     double epsilon, double delta, Rng& rng);

// Half-widths of the Laplace wrapper's accuracy interval,
//   (1 - a') f - k' - add <= output <= (1 + a') f + k' + add,
// which holds with probability 1 - delta - e^{-gamma}:
//   a'  = alpha (epsilon + 16 gamma) / (12 ln(4/delta)),
//   k'  = tau (2 gamma alpha / (3 ln(4/delta)) + 8 gamma / epsilon + 1),
//   add = 2 delta_f gamma / epsilon.
struct MainBounds {
  double alpha_prime = 0;
  double kappa_prime = 0;
  double additive = 0;

  Interval Around(double f) const {
    return {(1 - alpha_prime) * f - kappa_prime - additive,
            (1 + alpha_prime) * f + kappa_prime + additive};
  }
};

absl::StatusOr<MainBounds> TheoremMainBounds(const WrapConfig& cfg);

// Half-widths of the Cauchy wrapper's 9/10-probability interval (gamma >= 6.5):
//   mult = rho (1 + 48 gamma / epsilon),
//   add_kappa = 24 (rho + 1) gamma tau / epsilon,
//   add_sens = 6 delta_f gamma / epsilon.
struct FptasBounds {
  double mult = 0;
  double add_kappa = 0;
  double add_sens = 0;

  Interval Around(double f) const {
    return {(1 - mult) * f - add_kappa - add_sens,
            (1 + mult) * f + add_kappa + add_sens};
  }
};

absl::StatusOr<FptasBounds> LemmaFptasBounds(double rho, double tau,
                                             double delta_f, double epsilon,
                                             double gamma);

}  // namespace dpb

#endif  // DPB_FRAMEWORK_H_
