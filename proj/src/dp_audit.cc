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

#include "dpb/dp_audit.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "nlohmann/json.hpp"

namespace dpb {
namespace {

struct WilsonInterval {
  double lo;
  double hi;
};

WilsonInterval Wilson(int64_t count, int64_t n, double z) {
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(count) / nn;
  const double z2 = z * z;
  const double denom = 1 + z2 / nn;
  const double center = (p + z2 / (2 * nn)) / denom;
  const double half =
      z * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double Quantile(std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const size_t i = static_cast<size_t>(std::floor(pos));
  const size_t j = std::min(i + 1, sorted.size() - 1);
  return sorted[i] + (pos - static_cast<double>(i)) * (sorted[j] - sorted[i]);
}

}  // namespace

absl::StatusOr<AuditReport> AuditSamples(const std::vector<double>& on_d,
                                         const std::vector<double>& on_d_prime,
                                         const AuditConfig& cfg) {
  const int64_t n = static_cast<int64_t>(on_d.size());
  if (n < 1000 || static_cast<int64_t>(on_d_prime.size()) != n) {
    return absl::InvalidArgumentError(
        "An audit needs at least 1000 trials per input, equally many on both");
  }
  if (cfg.bins < 2) {
    return absl::InvalidArgumentError("An audit needs at least 2 bins");
  }
  if (!(cfg.delta_slack >= 0 && cfg.delta_slack < 1)) {
    return absl::InvalidArgumentError("delta_slack must lie in [0, 1)");
  }
  if (!(cfg.clip_quantile >= 0 && cfg.clip_quantile < 0.5) || !(cfg.z > 0)) {
    return absl::InvalidArgumentError("clip_quantile or z out of range");
  }
  for (double v : on_d) {
    if (!std::isfinite(v)) return absl::InvalidArgumentError("Non-finite output");
  }
  for (double v : on_d_prime) {
    if (!std::isfinite(v)) return absl::InvalidArgumentError("Non-finite output");
  }

  AuditReport report;
  report.delta_slack = cfg.delta_slack;
  report.trials = n;
  report.bins = cfg.bins;

  std::vector<double> pooled(on_d);
  pooled.insert(pooled.end(), on_d_prime.begin(), on_d_prime.end());
  std::sort(pooled.begin(), pooled.end());
  if (pooled.front() == pooled.back()) {
    report.degenerate = true;
    return report;
  }
  double lo = Quantile(pooled, cfg.clip_quantile);
  double hi = Quantile(pooled, 1 - cfg.clip_quantile);
  if (!(hi > lo)) {
    lo = pooled.front();
    hi = pooled.back();
  }
  const double width = (hi - lo) / cfg.bins;

  std::vector<int64_t> ca(cfg.bins, 0), cb(cfg.bins, 0);
  auto bin_of = [&](double v) {
    const double pos = std::floor((v - lo) / width);
    if (pos < 0) return 0;
    if (pos >= cfg.bins) return cfg.bins - 1;
    return static_cast<int>(pos);
  };
  for (double v : on_d) ++ca[bin_of(v)];
  for (double v : on_d_prime) ++cb[bin_of(v)];

  // Worst-case binomial standard deviation of an estimated mass.
  const double floor =
      cfg.delta_slack + 3 * std::sqrt(0.25 / static_cast<double>(n));
  const double nn = static_cast<double>(n);
  for (int k = 0; k < cfg.bins; ++k) {
    BinRatio r;
    r.bin = k;
    r.lo = lo + k * width;
    r.hi = lo + (k + 1) * width;
    r.count_d = ca[k];
    r.count_d_prime = cb[k];
    const double pa = ca[k] / nn;
    const double pb = cb[k] / nn;
    r.eligible = pa >= floor && pb >= floor;
    if (ca[k] > 0 && cb[k] > 0) {
      r.log_ratio = std::fabs(std::log(pa / pb));
      const WilsonInterval wa = Wilson(ca[k], n, cfg.z);
      const WilsonInterval wb = Wilson(cb[k], n, cfg.z);
      r.log_ratio_upper = std::max(std::log(wa.hi / wb.lo),
                                   std::log(wb.hi / wa.lo));
      // Zero when the two intervals overlap.
      r.log_ratio_lower =
          std::max({0.0, std::log(wa.lo / wb.hi), std::log(wb.lo / wa.hi)});
    }
    if (r.eligible) {
      report.epsilon_hat = std::max(report.epsilon_hat, r.log_ratio_upper);
      if (r.log_ratio_lower > cfg.claimed_epsilon) {
        report.flagged_bins.push_back(k);
      }
    }
    report.per_bin_ratios.push_back(r);
  }
  return report;
}

std::string AuditReport::ToJson() const {
  nlohmann::json j;
  j["epsilon_hat"] = epsilon_hat;
  j["delta_slack"] = delta_slack;
  j["trials"] = trials;
  j["bins"] = bins;
  j["flagged_bins"] = flagged_bins;
  j["degenerate"] = degenerate;
  j["note"] =
      "an epsilon_hat well above the claim refutes it; a small one does not "
      "certify privacy";
  nlohmann::json per_bin = nlohmann::json::array();
  for (const BinRatio& r : per_bin_ratios) {
    per_bin.push_back({{"bin", r.bin},
                       {"lo", r.lo},
                       {"hi", r.hi},
                       {"count_d", r.count_d},
                       {"count_d_prime", r.count_d_prime},
                       {"log_ratio", r.log_ratio},
                       {"log_ratio_upper", r.log_ratio_upper},
                       {"eligible", r.eligible}});
  }
  j["per_bin_ratios"] = std::move(per_bin);
  return j.dump(2);
}

}  // namespace dpb
