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

// Command-line entry point: dpb <wrap|audit|coverage|bench> --config FILE.
// Exit status is 0 on success, 1 when a command's assertion fails and 2 on
// any error.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "dpb/experiment.h"

int main(int argc, char** argv) {
  CLI::App app{"Differentially private wrappers for approximation algorithms"};
  std::string command;
  std::string config_path;
  std::optional<uint64_t> seed;
  std::optional<int64_t> trials;
  std::string out_path;
  bool debug_trace = false;
  app.add_option("command", command, "wrap, audit, coverage or bench")->required();
  app.add_option("--config", config_path, "JSON experiment config")->required();
  app.add_option("--seed", seed, "Master seed (overrides the config)");
  app.add_option("--trials", trials, "Trial count (overrides the config)");
  app.add_option("--out", out_path, "Output file (default: config 'out' or stdout)");
  app.add_flag("--debug-trace", debug_trace, "Emit per-trial mechanism internals");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  absl::StatusOr<dpb::ExperimentConfig> cfg = dpb::LoadExperimentConfig(config_path);
  if (!cfg.ok()) {
    std::cerr << "error: " << cfg.status().message() << "\n";
    return 2;
  }
  absl::StatusOr<dpb::Command> cmd = dpb::ParseCommand(command);
  if (!cmd.ok()) {
    std::cerr << "error: " << cmd.status().message() << "\n";
    return 2;
  }
  cfg->command = *cmd;
  if (seed) cfg->seed = *seed;
  if (trials) cfg->trials = *trials;
  if (!out_path.empty()) cfg->output_path = out_path;
  if (debug_trace) cfg->debug_trace = true;

  std::ofstream file;
  if (!cfg->output_path.empty()) {
    file.open(cfg->output_path);
    if (!file) {
      std::cerr << "error: cannot write " << cfg->output_path << "\n";
      return 2;
    }
  }
  std::ostream& out = cfg->output_path.empty() ? std::cout : file;
  absl::StatusOr<dpb::CommandOutcome> outcome = dpb::RunExperiment(*cfg, out);
  if (!outcome.ok()) {
    std::cerr << "error: " << outcome.status().message() << "\n";
    return 2;
  }
  std::cerr << outcome->summary << "\n";
  return outcome->passed ? 0 : 1;
}
