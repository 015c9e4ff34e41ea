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

#ifndef DPB_EXPERIMENT_H_
#define DPB_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "absl/status/statusor.h"
#include "dpb/approx.h"

namespace dpb {

enum class Command { kWrap, kAudit, kCoverage, kBench };
enum class Wrapper { kLaplace, kCauchy };

struct PureDpOptions {
  double range_max = 0;
  double spacing = 0;
};

// One experiment, read from a JSON file. Relative input paths are resolved
// against the directory of the config file.
struct ExperimentConfig {
  Command command = Command::kWrap;
  std::string substrate;
  std::string preset;
  std::string input_path;
  std::string neighbor_input_path;
  Wrapper wrapper = Wrapper::kLaplace;

  WrapConfig wrap;
  // Which WrapConfig fields the file set explicitly; presets fill the rest.
  bool has_delta = false;
  bool has_gamma = false;
  bool has_delta_f = false;
  bool has_tau = false;
  // Preset constant c of delta = n^-c and gamma = c ln n.
  double preset_c = 1;

  int64_t window = 0;
  std::optional<PureDpOptions> pure_dp;

  int audit_bins = 40;
  std::optional<double> audit_delta_slack;
  double audit_z = 1.645;

  int64_t trials = 1;
  uint64_t seed = 0;
  std::string output_path;
  bool debug_trace = false;
};

absl::StatusOr<Command> ParseCommand(const std::string& name);

absl::StatusOr<ExperimentConfig> ParseExperimentConfig(
    const std::string& json_text, const std::string& base_dir = "");
absl::StatusOr<ExperimentConfig> LoadExperimentConfig(const std::string& path);

// Applies the preset (if any) for a dataset of size n:
//   cc-paper : substrate cc_estimate, delta_f 2, delta n^-c, gamma c ln n;
//              kappa is read as a fraction of n, the substrate target becomes
//              kappa n and tau = kappa n / ln n.
//   mst-paper: substrate mst_estimate, delta_f = w, delta n^-c, gamma c ln n.
//   f2-paper : substrate l2_ams, delta_f 2, with m in place of n.
//   f0-paper : substrate f0_kmv, delta_f 2, with m in place of n.
//   sw-de-paper: substrate window_distinct_sketch, delta_f 2, m for n.
// Fields set explicitly in the file are kept.
absl::StatusOr<ExperimentConfig> ApplyPreset(ExperimentConfig cfg, double n,
                                             int max_weight = 1);

struct CommandOutcome {
  // Every assertion of the command held.
  bool passed = true;
  std::string summary;
};

// Runs the command and writes its product (CSV or JSON) to `out`.
absl::StatusOr<CommandOutcome> RunExperiment(const ExperimentConfig& cfg,
                                             std::ostream& out);

// Shortest decimal form that parses back to the same double.
std::string FormatDouble(double v);

}  // namespace dpb

#endif  // DPB_EXPERIMENT_H_
