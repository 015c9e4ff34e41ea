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

#include "dpb/framework.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpb/noise.h"

namespace dpb {
namespace {

absl::Status CheckAlphaEpsilon(double alpha, double epsilon) {
  if (!(alpha >= 0 && alpha < 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("alpha must lie in [0, 1), got ", alpha));
  }
  if (!(epsilon > 0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be positive and finite, got ", epsilon));
  }
  return absl::OkStatus();
}

absl::Status ValidateCommon(const WrapConfig& cfg) {
  DPB_RETURN_IF_ERROR(CheckAlphaEpsilon(cfg.alpha, cfg.epsilon));
  if (!(cfg.kappa >= 0) || !std::isfinite(cfg.kappa)) {
    return absl::InvalidArgumentError(
        absl::StrCat("kappa must be nonnegative, got ", cfg.kappa));
  }
  if (!(cfg.delta_f >= 0) || !std::isfinite(cfg.delta_f)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta_f must be nonnegative, got ", cfg.delta_f));
  }
  if (!(cfg.gamma > 0) || !std::isfinite(cfg.gamma)) {
    return absl::InvalidArgumentError(
        absl::StrCat("gamma must be positive, got ", cfg.gamma));
  }
  if (cfg.tau_override.has_value() &&
      (!(*cfg.tau_override >= 0) || !std::isfinite(*cfg.tau_override))) {
    return absl::InvalidArgumentError(absl::StrCat(
        "tau_override must be nonnegative, got ", *cfg.tau_override));
  }
  return absl::OkStatus();
}

}  // namespace

absl::Status ValidateApproxParams(const ApproxParams& params) {
  if (!(params.alpha >= 0 && params.alpha < 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("alpha must lie in [0, 1), got ", params.alpha));
  }
  if (!(params.kappa >= 0) || !std::isfinite(params.kappa)) {
    return absl::InvalidArgumentError(
        absl::StrCat("kappa must be nonnegative, got ", params.kappa));
  }
  if (!(params.fail_prob >= 0 && params.fail_prob < 1)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "fail_prob must lie in [0, 1), got ", params.fail_prob));
  }
  return absl::OkStatus();
}

absl::Status WrapConfig::Validate() const {
  DPB_RETURN_IF_ERROR(ValidateCommon(*this));
  if (!(delta > 0 && delta < 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must lie in (0, 1), got ", delta));
  }
  return absl::OkStatus();
}

absl::Status WrapConfig::ValidatePure() const { return ValidateCommon(*this); }

absl::StatusOr<double> TuneRhoLaplace(double alpha, double epsilon,
                                      double delta) {
  DPB_RETURN_IF_ERROR(CheckAlphaEpsilon(alpha, epsilon));
  if (!(delta > 0 && delta < 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must lie in (0, 1), got ", delta));
  }
  return epsilon * alpha / (12 * std::log(4 / delta));
}

absl::StatusOr<double> TuneRhoCauchy(double alpha, double epsilon) {
  DPB_RETURN_IF_ERROR(CheckAlphaEpsilon(alpha, epsilon));
  return epsilon * alpha / 36;
}

double SmoothBound(double x, double rho, double tau, double delta_f) {
  return 4 * rho * x + 4 * tau + delta_f;
}

double LaplaceNoiseScale(double x, double rho, double tau, double delta_f,
                         double epsilon) {
  return 2 * SmoothBound(x, rho, tau, delta_f) / epsilon;
}

double CauchyNoiseScale(double x, double rho, double tau, double delta_f,
                        double epsilon) {
  return 6 * SmoothBound(x, rho, tau, delta_f) / epsilon;
}

namespace internal {
namespace {

WrappedOutput Finish(double x, double rho, double tau, double scale,
                     double draw) {
  WrappedOutput out;
  out.output = x + draw;
  out.trace = {x, rho, tau, scale, draw, out.output};
  return out;
}

}  // namespace

absl::Status CheckSubstrateValue(double x) {
  if (std::isnan(x)) {
    return absl::FailedPreconditionError("Substrate returned NaN");
  }
  if (x < 0) {
    return absl::FailedPreconditionError(absl::StrCat(
        "Substrate returned the negative value ", x,
        "; wrapped functions must map into the nonnegative reals"));
  }
  return absl::OkStatus();
}

WrappedOutput AddLaplaceNoise(double x, double rho, double tau,
                              const WrapConfig& cfg, Rng& rng) {
  const double b = LaplaceNoiseScale(x, rho, tau, cfg.delta_f, cfg.epsilon);
  // b is nonnegative and finite for a validated config and a checked x.
  const double draw = SampleLaplace(*NoiseScale::Create(b), rng);
  return Finish(x, rho, tau, b, draw);
}

WrappedOutput AddCauchyNoise(double x, double rho, double tau,
                             const WrapConfig& cfg, Rng& rng) {
  const double b = CauchyNoiseScale(x, rho, tau, cfg.delta_f, cfg.epsilon);
  const double draw = SampleCauchy(*NoiseScale::Create(b), rng);
  return Finish(x, rho, tau, b, draw);
}

}  // namespace internal

int MedianReplications(double target_fail) {
  return static_cast<int>(std::ceil(18 * std::log(2 / target_fail)));
}

double Median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  const size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + mid);
  return lower + (upper - lower) / 2;
}

absl::StatusOr<GridSpec> GridSpec::Create(double range_max, double spacing) {
  if (!(spacing > 0) || !std::isfinite(spacing)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Grid spacing must be positive, got ", spacing));
  }
  if (!(range_max > 0) || !std::isfinite(range_max)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Grid range_max must be positive, got ", range_max));
  }
  const double count = std::floor(range_max / spacing) + 1;
  if (count > static_cast<double>(int64_t{1} << 52)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Grid with ", count, " points is too large"));
  }
  return GridSpec(range_max, spacing, static_cast<int64_t>(count));
}

double PureDpFallbackProbability(double epsilon, double delta,
                                 int64_t num_points) {
  const double mass = delta * static_cast<double>(num_points);
  if (mass == 0) return 0;
  return mass / (std::expm1(epsilon) + mass);
}

absl::StatusOr<GridRelease> ToPureDp(double value, const GridSpec& grid,
                                     double epsilon, double delta, Rng& rng) {
  if (!(epsilon > 0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be positive and finite, got ", epsilon));
  }
  if (!(delta >= 0 && delta < 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must lie in [0, 1), got ", delta));
  }
  if (std::isnan(value)) {
    return absl::InvalidArgumentError("Cannot release NaN on a grid");
  }
  GridRelease release;
  double v = value;
  if (v < 0) {
    v = 0;
    release.clamped = true;
  } else if (v > grid.range_max()) {
    v = grid.range_max();
    release.clamped = true;
  }
  // Rounding up a value inside [0, range_max] never leaves the grid except
  // when range_max is not itself a grid point; the last point then absorbs it.
  const int64_t last = grid.num_points() - 1;
  const double raw = std::ceil(v / grid.spacing());
  int64_t index = raw >= static_cast<double>(last) ? last
                                                    : static_cast<int64_t>(raw);
  const double p =
      PureDpFallbackProbability(epsilon, delta, grid.num_points());
  // Always consume one uniform so the stream position does not depend on p.
  if (rng.UniformOpen01() < p) {
    release.fallback = true;
    index = static_cast<int64_t>(
        rng.UniformInt(static_cast<uint64_t>(grid.num_points())));
  }
  release.output = grid.Point(index);
  return release;
}

absl::StatusOr<MainBounds> TheoremMainBounds(const WrapConfig& cfg) {
  DPB_RETURN_IF_ERROR(cfg.Validate());
  const double log_term = std::log(4 / cfg.delta);
  MainBounds b;
  b.alpha_prime = cfg.alpha * (cfg.epsilon + 16 * cfg.gamma) / (12 * log_term);
  b.kappa_prime = cfg.tau() * (2 * cfg.gamma * cfg.alpha / (3 * log_term) +
                               8 * cfg.gamma / cfg.epsilon + 1);
  b.additive = 2 * cfg.delta_f * cfg.gamma / cfg.epsilon;
  return b;
}

absl::StatusOr<FptasBounds> LemmaFptasBounds(double rho, double tau,
                                             double delta_f, double epsilon,
                                             double gamma) {
  // At gamma = 6.5 the Cauchy tail is already below 1/10, so the boundary
  // itself is accepted.
  if (!(gamma >= 6.5)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "The Cauchy accuracy interval needs gamma >= 6.5, got ", gamma));
  }
  if (!(epsilon > 0) || !(rho >= 0) || !(tau >= 0) || !(delta_f >= 0)) {
    return absl::InvalidArgumentError(
        "Need epsilon > 0 and nonnegative rho, tau, delta_f");
  }
  FptasBounds b;
  b.mult = rho * (1 + 48 * gamma / epsilon);
  b.add_kappa = 24 * (rho + 1) * gamma * tau / epsilon;
  b.add_sens = 6 * delta_f * gamma / epsilon;
  return b;
}

}  // namespace dpb
