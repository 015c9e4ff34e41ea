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

#include "dpb/experiment.h"

#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpb/dp_audit.h"
#include "dpb/framework.h"
#include "dpb/graph.h"
#include "dpb/knapsack.h"
#include "dpb/status_macros.h"
#include "dpb/stream.h"
#include "dpb/substrates.h"
#include "nlohmann/json.hpp"

namespace dpb {
namespace {

using json = nlohmann::json;

enum class DatasetKind { kGraph, kKnapsack, kStream, kWindowedStream };

struct SubstrateInfo {
  DatasetKind kind;
  const char* exact;
};

absl::StatusOr<SubstrateInfo> LookupSubstrate(const std::string& name) {
  static const auto* const kTable =
      new std::map<std::string, SubstrateInfo>{
          {"cc_exact", {DatasetKind::kGraph, "cc_exact"}},
          {"cc_estimate", {DatasetKind::kGraph, "cc_exact"}},
          {"mst_exact", {DatasetKind::kGraph, "mst_exact"}},
          {"mst_estimate", {DatasetKind::kGraph, "mst_exact"}},
          {"knapsack_exact", {DatasetKind::kKnapsack, "knapsack_exact"}},
          {"knapsack_fptas", {DatasetKind::kKnapsack, "knapsack_exact"}},
          {"f2_exact", {DatasetKind::kStream, "f2_exact"}},
          {"f2_ams", {DatasetKind::kStream, "f2_exact"}},
          {"l2_exact", {DatasetKind::kStream, "l2_exact"}},
          {"l2_ams", {DatasetKind::kStream, "l2_exact"}},
          {"f0_exact", {DatasetKind::kStream, "f0_exact"}},
          {"f0_kmv", {DatasetKind::kStream, "f0_exact"}},
          {"window_distinct_exact",
           {DatasetKind::kWindowedStream, "window_distinct_exact"}},
          {"window_distinct_sketch",
           {DatasetKind::kWindowedStream, "window_distinct_exact"}},
      };
  auto it = kTable->find(name);
  if (it == kTable->end()) {
    return absl::InvalidArgumentError(
        absl::StrCat("Unknown substrate '", name, "'"));
  }
  return it->second;
}

template <typename Dataset>
absl::StatusOr<TunableSubstrate<Dataset>> MakeSubstrate(const std::string& name);

template <>
absl::StatusOr<TunableSubstrate<QueryGraph>> MakeSubstrate(
    const std::string& name) {
  if (name == "cc_exact") return CcExactSubstrate();
  if (name == "cc_estimate") return CcEstimateSubstrate();
  if (name == "mst_exact") return MstExactSubstrate();
  if (name == "mst_estimate") return MstEstimateSubstrate();
  return absl::InvalidArgumentError(absl::StrCat("'", name, "' is not a graph substrate"));
}

template <>
absl::StatusOr<TunableSubstrate<KnapsackInstance>> MakeSubstrate(
    const std::string& name) {
  if (name == "knapsack_exact") return KnapsackExactSubstrate();
  if (name == "knapsack_fptas") return KnapsackFptasSubstrate();
  return absl::InvalidArgumentError(absl::StrCat("'", name, "' is not a knapsack substrate"));
}

template <>
absl::StatusOr<TunableSubstrate<UpdateStream>> MakeSubstrate(
    const std::string& name) {
  if (name == "f2_exact") return F2ExactSubstrate();
  if (name == "f2_ams") return F2AmsSubstrate();
  if (name == "l2_exact") return L2ExactSubstrate();
  if (name == "l2_ams") return L2AmsSubstrate();
  if (name == "f0_exact") return F0ExactSubstrate();
  if (name == "f0_kmv") return F0KmvSubstrate();
  return absl::InvalidArgumentError(absl::StrCat("'", name, "' is not a stream substrate"));
}

template <>
absl::StatusOr<TunableSubstrate<WindowedStream>> MakeSubstrate(
    const std::string& name) {
  if (name == "window_distinct_exact") return WindowDistinctExactSubstrate();
  if (name == "window_distinct_sketch") return WindowDistinctSketchSubstrate();
  return absl::InvalidArgumentError(
      absl::StrCat("'", name, "' is not a sliding-window substrate"));
}

absl::StatusOr<QueryGraph> Neighbor(const QueryGraph& g, Rng& rng) {
  DPB_ASSIGN_OR_RETURN(auto pair, EdgeNeighborPair(g, rng));
  return std::move(pair.second);
}

absl::StatusOr<KnapsackInstance> Neighbor(const KnapsackInstance& k, Rng& rng) {
  return KnapsackNeighbor(k, rng);
}

absl::StatusOr<UpdateStream> Neighbor(const UpdateStream& s, Rng& rng) {
  return StreamNeighbor(s, rng);
}

// Replaces one update inside the window so the windowed datasets differ.
absl::StatusOr<WindowedStream> Neighbor(const WindowedStream& w, Rng& rng) {
  const int64_t m = w.stream.length();
  const int64_t first = std::max<int64_t>(0, m - w.window);
  if (m == 0) return absl::InvalidArgumentError("Empty stream");
  UpdateStream inside;
  inside.universe_size = w.stream.universe_size;
  inside.mode = w.stream.mode;
  inside.updates.assign(w.stream.updates.begin() + first, w.stream.updates.end());
  DPB_ASSIGN_OR_RETURN(UpdateStream changed, StreamNeighbor(inside, rng));
  WindowedStream out = w;
  std::copy(changed.updates.begin(), changed.updates.end(),
            out.stream.updates.begin() + first);
  return out;
}

double UpstreamDelta(const ExperimentConfig& cfg) {
  if (cfg.wrapper == Wrapper::kCauchy) return 0;
  const double d = cfg.wrap.delta;
  return d * (1 + std::exp(cfg.wrap.epsilon / 2)) + d / 2;
}

template <typename Dataset>
class Runner {
 public:
  Runner(const ExperimentConfig& cfg, Dataset data)
      : cfg_(cfg), data_(std::move(data)) {}

  absl::Status Init() {
    DPB_ASSIGN_OR_RETURN(substrate_, MakeSubstrate<Dataset>(cfg_.substrate));
    if (cfg_.wrapper == Wrapper::kLaplace &&
        substrate_.EffectiveFailProb(cfg_.wrap.delta / 2) >
            cfg_.wrap.delta / 2 &&
        cfg_.wrap.delta / 2 < 1.0 / 3) {
      DPB_ASSIGN_OR_RETURN(substrate_,
                           MedianBoost(std::move(substrate_), cfg_.wrap.delta / 2));
    }
    if (cfg_.pure_dp.has_value()) {
      DPB_ASSIGN_OR_RETURN(grid_, GridSpec::Create(cfg_.pure_dp->range_max,
                                                   cfg_.pure_dp->spacing));
    }
    return absl::OkStatus();
  }

  absl::StatusOr<WrappedOutput> WrapOnce(const Dataset& data, Rng& rng) {
    absl::StatusOr<WrappedOutput> out =
        cfg_.wrapper == Wrapper::kLaplace
            ? WrapLaplace(substrate_, data, cfg_.wrap, rng)
            : WrapCauchy(substrate_, data, cfg_.wrap, rng);
    if (!out.ok() || !grid_.has_value()) return out;
    DPB_ASSIGN_OR_RETURN(const GridRelease release,
                         ToPureDp(out->output, *grid_, cfg_.wrap.epsilon,
                                  UpstreamDelta(cfg_), rng));
    out->output = release.output;
    return out;
  }

  absl::StatusOr<CommandOutcome> Run(std::ostream& out) {
    DPB_RETURN_IF_ERROR(Init());
    switch (cfg_.command) {
      case Command::kWrap:
        return RunWrap(out);
      case Command::kAudit:
        return RunAudit(out);
      case Command::kCoverage:
        return RunCoverage(out);
      case Command::kBench:
        return RunBench(out);
    }
    return absl::InternalError("Unhandled command");
  }

 private:
  absl::StatusOr<CommandOutcome> RunWrap(std::ostream& out) {
    out << (cfg_.debug_trace ? "trial,substrate_value,output,noise_scale,rho,tau"
                             : "trial,output")
        << "\n";
    for (int64_t t = 0; t < cfg_.trials; ++t) {
      Rng rng = Rng::ForStream(RngSeed{cfg_.seed}, static_cast<uint64_t>(t));
      DPB_ASSIGN_OR_RETURN(const WrappedOutput w, WrapOnce(data_, rng));
      out << t;
      if (cfg_.debug_trace) {
        out << "," << FormatDouble(w.trace.substrate_value) << ","
            << FormatDouble(w.output) << "," << FormatDouble(w.trace.noise_scale)
            << "," << FormatDouble(w.trace.rho) << "," << FormatDouble(w.trace.tau);
      } else {
        out << "," << FormatDouble(w.output);
      }
      out << "\n";
    }
    return CommandOutcome{true, absl::StrCat("wrote ", cfg_.trials, " trials")};
  }

  absl::StatusOr<CommandOutcome> RunAudit(std::ostream& out) {
    Rng gen = Rng::ForStream(RngSeed{cfg_.seed}, uint64_t{1} << 62);
    DPB_ASSIGN_OR_RETURN(const Dataset other, cfg_.neighbor_input_path.empty()
                                                  ? Neighbor(data_, gen)
                                                  : LoadNeighbor());
    AuditConfig ac;
    ac.trials = cfg_.trials;
    ac.bins = cfg_.audit_bins;
    ac.z = cfg_.audit_z;
    ac.claimed_epsilon = cfg_.wrap.epsilon;
    ac.delta_slack = cfg_.audit_delta_slack.value_or(
        grid_.has_value() ? 0 : UpstreamDelta(cfg_));
    DPB_ASSIGN_OR_RETURN(
        const AuditReport report,
        EstimateEpsilon(
            [this](const Dataset& d, Rng& rng) -> absl::StatusOr<double> {
              DPB_ASSIGN_OR_RETURN(const WrappedOutput w, WrapOnce(d, rng));
              return w.output;
            },
            data_, other, ac, RngSeed{cfg_.seed}));
    out << report.ToJson() << "\n";
    const bool passed = report.flagged_bins.empty();
    return CommandOutcome{
        passed, absl::StrCat("epsilon_hat=", FormatDouble(report.epsilon_hat),
                             " flagged_bins=", report.flagged_bins.size(),
                             passed ? " (claim not refuted)" : " (claim refuted)")};
  }

  absl::StatusOr<CommandOutcome> RunCoverage(std::ostream& out) {
    DPB_ASSIGN_OR_RETURN(const SubstrateInfo info, LookupSubstrate(cfg_.substrate));
    DPB_ASSIGN_OR_RETURN(TunableSubstrate<Dataset> exact,
                         MakeSubstrate<Dataset>(info.exact));
    if (!exact.deterministic) {
      return absl::UnimplementedError(absl::StrCat(
          "Substrate '", cfg_.substrate, "' has no exact oracle companion"));
    }
    Rng unused(RngSeed{0});
    DPB_ASSIGN_OR_RETURN(const double f, exact.Evaluate(data_, {}, unused));
    Interval interval;
    double target = 0;
    if (cfg_.wrapper == Wrapper::kLaplace) {
      DPB_ASSIGN_OR_RETURN(const MainBounds b, TheoremMainBounds(cfg_.wrap));
      interval = b.Around(f);
      target = 1 - cfg_.wrap.delta - std::exp(-cfg_.wrap.gamma);
    } else {
      DPB_ASSIGN_OR_RETURN(const double rho,
                           TuneRhoCauchy(cfg_.wrap.alpha, cfg_.wrap.epsilon));
      DPB_ASSIGN_OR_RETURN(
          const FptasBounds b,
          LemmaFptasBounds(rho, cfg_.wrap.tau(), cfg_.wrap.delta_f,
                           cfg_.wrap.epsilon, cfg_.wrap.gamma));
      interval = b.Around(f);
      target = 0.9;
    }
    if (grid_.has_value()) {
      interval.lo -= grid_->spacing();
      interval.hi += grid_->spacing();
      target -= PureDpFallbackProbability(cfg_.wrap.epsilon, UpstreamDelta(cfg_),
                                          grid_->num_points());
    }
    int64_t inside = 0;
    for (int64_t t = 0; t < cfg_.trials; ++t) {
      Rng rng = Rng::ForStream(RngSeed{cfg_.seed}, static_cast<uint64_t>(t));
      DPB_ASSIGN_OR_RETURN(const WrappedOutput w, WrapOnce(data_, rng));
      if (interval.Contains(w.output)) ++inside;
    }
    const double n = static_cast<double>(cfg_.trials);
    const double coverage = inside / n;
    const double clipped = std::min(1.0, std::max(0.0, target));
    const double threshold = target - 3 * std::sqrt(clipped * (1 - clipped) / n);
    const bool passed = coverage >= threshold;
    json j = {{"substrate", cfg_.substrate},
              {"wrapper", cfg_.wrapper == Wrapper::kLaplace ? "laplace" : "cauchy"},
              {"trials", cfg_.trials},
              {"exact_value", f},
              {"interval_lo", interval.lo},
              {"interval_hi", interval.hi},
              {"coverage", coverage},
              {"target", target},
              {"threshold", threshold},
              {"passed", passed}};
    out << j.dump(2) << "\n";
    return CommandOutcome{
        passed, absl::StrCat("coverage=", FormatDouble(coverage),
                             " threshold=", FormatDouble(threshold),
                             passed ? " PASS" : " FAIL")};
  }

  absl::StatusOr<CommandOutcome> RunBench(std::ostream& out) {
    out << "trial,seconds,queries,space_words,items_processed\n";
    for (int64_t t = 0; t < cfg_.trials; ++t) {
      Rng rng = Rng::ForStream(RngSeed{cfg_.seed}, static_cast<uint64_t>(t));
      const ResourceMeter before = substrate_.meter;
      const auto start = std::chrono::steady_clock::now();
      DPB_RETURN_IF_ERROR(WrapOnce(data_, rng).status());
      const std::chrono::duration<double> elapsed =
          std::chrono::steady_clock::now() - start;
      const ResourceMeter& after = substrate_.meter;
      out << t << "," << FormatDouble(elapsed.count()) << ","
          << after.queries - before.queries << ","
          << after.space_words - before.space_words << ","
          << after.items_processed - before.items_processed << "\n";
    }
    return CommandOutcome{true, absl::StrCat("benchmarked ", cfg_.trials, " trials")};
  }

  absl::StatusOr<Dataset> LoadNeighbor();

  const ExperimentConfig& cfg_;
  Dataset data_;
  TunableSubstrate<Dataset> substrate_;
  std::optional<GridSpec> grid_;
};

template <>
absl::StatusOr<QueryGraph> Runner<QueryGraph>::LoadNeighbor() {
  return LoadGraph(cfg_.neighbor_input_path);
}
template <>
absl::StatusOr<KnapsackInstance> Runner<KnapsackInstance>::LoadNeighbor() {
  return LoadKnapsack(cfg_.neighbor_input_path);
}
template <>
absl::StatusOr<UpdateStream> Runner<UpdateStream>::LoadNeighbor() {
  return LoadStream(cfg_.neighbor_input_path);
}
template <>
absl::StatusOr<WindowedStream> Runner<WindowedStream>::LoadNeighbor() {
  DPB_ASSIGN_OR_RETURN(UpdateStream s, LoadStream(cfg_.neighbor_input_path));
  return WindowedStream{std::move(s), cfg_.window};
}

// Typed getters that report the offending key.
absl::StatusOr<double> GetNumber(const json& j, const char* key) {
  if (!j.is_number()) {
    return absl::InvalidArgumentError(absl::StrCat("'", key, "' must be a number"));
  }
  return j.get<double>();
}

absl::StatusOr<int64_t> GetInt(const json& j, const char* key) {
  if (!j.is_number_integer()) {
    return absl::InvalidArgumentError(
        absl::StrCat("'", key, "' must be an integer"));
  }
  return j.get<int64_t>();
}

absl::StatusOr<std::string> GetString(const json& j, const char* key) {
  if (!j.is_string()) {
    return absl::InvalidArgumentError(absl::StrCat("'", key, "' must be a string"));
  }
  return j.get<std::string>();
}

std::string Resolve(const std::string& base, const std::string& path) {
  if (path.empty() || base.empty()) return path;
  std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(base) / p).string();
}

}  // namespace

std::string FormatDouble(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

absl::StatusOr<Command> ParseCommand(const std::string& name) {
  if (name == "wrap") return Command::kWrap;
  if (name == "audit") return Command::kAudit;
  if (name == "coverage") return Command::kCoverage;
  if (name == "bench") return Command::kBench;
  return absl::InvalidArgumentError(absl::StrCat(
      "Unknown command '", name, "'; expected wrap, audit, coverage or bench"));
}

absl::StatusOr<ExperimentConfig> ParseExperimentConfig(
    const std::string& json_text, const std::string& base_dir) {
  json j = json::parse(json_text, nullptr, /*allow_exceptions=*/false,
                       /*ignore_comments=*/true);
  if (j.is_discarded() || !j.is_object()) {
    return absl::InvalidArgumentError("Config is not a JSON object");
  }
  static const std::set<std::string> kKeys = {
      "command", "substrate", "preset",  "input",    "neighbor_input",
      "wrapper", "epsilon",   "delta",   "alpha",    "kappa",
      "delta_f", "gamma",     "tau",     "c",        "window",
      "pure_dp", "audit",     "trials",  "seed",     "out",
      "debug_trace"};
  for (const auto& [key, value] : j.items()) {
    if (!kKeys.count(key)) {
      return absl::InvalidArgumentError(absl::StrCat("Unknown config key '", key, "'"));
    }
  }
  ExperimentConfig cfg;
  if (j.contains("command")) {
    DPB_ASSIGN_OR_RETURN(const std::string c, GetString(j["command"], "command"));
    DPB_ASSIGN_OR_RETURN(cfg.command, ParseCommand(c));
  }
  if (j.contains("substrate")) {
    DPB_ASSIGN_OR_RETURN(cfg.substrate, GetString(j["substrate"], "substrate"));
  }
  if (j.contains("preset")) {
    DPB_ASSIGN_OR_RETURN(cfg.preset, GetString(j["preset"], "preset"));
  }
  if (j.contains("input")) {
    DPB_ASSIGN_OR_RETURN(const std::string p, GetString(j["input"], "input"));
    cfg.input_path = Resolve(base_dir, p);
  }
  if (j.contains("neighbor_input")) {
    DPB_ASSIGN_OR_RETURN(const std::string p,
                         GetString(j["neighbor_input"], "neighbor_input"));
    cfg.neighbor_input_path = Resolve(base_dir, p);
  }
  if (j.contains("wrapper")) {
    DPB_ASSIGN_OR_RETURN(const std::string w, GetString(j["wrapper"], "wrapper"));
    if (w == "laplace") {
      cfg.wrapper = Wrapper::kLaplace;
    } else if (w == "cauchy") {
      cfg.wrapper = Wrapper::kCauchy;
    } else {
      return absl::InvalidArgumentError(
          absl::StrCat("Unknown wrapper '", w, "'; expected laplace or cauchy"));
    }
  }
  if (j.contains("epsilon")) {
    DPB_ASSIGN_OR_RETURN(cfg.wrap.epsilon, GetNumber(j["epsilon"], "epsilon"));
  }
  if (j.contains("delta")) {
    DPB_ASSIGN_OR_RETURN(cfg.wrap.delta, GetNumber(j["delta"], "delta"));
    cfg.has_delta = true;
  }
  if (j.contains("alpha")) {
    DPB_ASSIGN_OR_RETURN(cfg.wrap.alpha, GetNumber(j["alpha"], "alpha"));
  }
  if (j.contains("kappa")) {
    DPB_ASSIGN_OR_RETURN(cfg.wrap.kappa, GetNumber(j["kappa"], "kappa"));
  }
  if (j.contains("delta_f")) {
    DPB_ASSIGN_OR_RETURN(cfg.wrap.delta_f, GetNumber(j["delta_f"], "delta_f"));
    cfg.has_delta_f = true;
  }
  if (j.contains("gamma")) {
    DPB_ASSIGN_OR_RETURN(cfg.wrap.gamma, GetNumber(j["gamma"], "gamma"));
    cfg.has_gamma = true;
  }
  if (j.contains("tau")) {
    DPB_ASSIGN_OR_RETURN(const double tau, GetNumber(j["tau"], "tau"));
    cfg.wrap.tau_override = tau;
    cfg.has_tau = true;
  }
  if (j.contains("c")) {
    DPB_ASSIGN_OR_RETURN(cfg.preset_c, GetNumber(j["c"], "c"));
    if (!(cfg.preset_c > 0)) return absl::InvalidArgumentError("'c' must be positive");
  }
  if (j.contains("window")) {
    DPB_ASSIGN_OR_RETURN(cfg.window, GetInt(j["window"], "window"));
  }
  if (j.contains("pure_dp")) {
    const json& p = j["pure_dp"];
    if (!p.is_object() || !p.contains("range_max") || !p.contains("spacing")) {
      return absl::InvalidArgumentError(
          "'pure_dp' must be an object with range_max and spacing");
    }
    PureDpOptions opt;
    DPB_ASSIGN_OR_RETURN(opt.range_max, GetNumber(p["range_max"], "range_max"));
    DPB_ASSIGN_OR_RETURN(opt.spacing, GetNumber(p["spacing"], "spacing"));
    cfg.pure_dp = opt;
  }
  if (j.contains("audit")) {
    const json& a = j["audit"];
    if (!a.is_object()) return absl::InvalidArgumentError("'audit' must be an object");
    if (a.contains("bins")) {
      DPB_ASSIGN_OR_RETURN(const int64_t bins, GetInt(a["bins"], "bins"));
      cfg.audit_bins = static_cast<int>(bins);
    }
    if (a.contains("delta_slack")) {
      DPB_ASSIGN_OR_RETURN(const double s, GetNumber(a["delta_slack"], "delta_slack"));
      cfg.audit_delta_slack = s;
    }
    if (a.contains("z")) {
      DPB_ASSIGN_OR_RETURN(cfg.audit_z, GetNumber(a["z"], "z"));
    }
  }
  if (j.contains("trials")) {
    DPB_ASSIGN_OR_RETURN(cfg.trials, GetInt(j["trials"], "trials"));
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) {
      return absl::InvalidArgumentError("'seed' must be a nonnegative integer");
    }
    cfg.seed = j["seed"].get<uint64_t>();
  }
  if (j.contains("out")) {
    DPB_ASSIGN_OR_RETURN(const std::string p, GetString(j["out"], "out"));
    cfg.output_path = Resolve(base_dir, p);
  }
  if (j.contains("debug_trace")) {
    if (!j["debug_trace"].is_boolean()) {
      return absl::InvalidArgumentError("'debug_trace' must be a boolean");
    }
    cfg.debug_trace = j["debug_trace"].get<bool>();
  }
  return cfg;
}

absl::StatusOr<ExperimentConfig> LoadExperimentConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("Cannot open config ", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string base =
      std::filesystem::path(path).parent_path().string();
  absl::StatusOr<ExperimentConfig> cfg = ParseExperimentConfig(buf.str(), base);
  if (!cfg.ok()) {
    return absl::Status(cfg.status().code(),
                        absl::StrCat(path, ": ", cfg.status().message()));
  }
  return cfg;
}

absl::StatusOr<ExperimentConfig> ApplyPreset(ExperimentConfig cfg, double n,
                                             int max_weight) {
  if (cfg.preset.empty()) return cfg;
  static const std::map<std::string, std::string> kDefaults = {
      {"cc-paper", "cc_estimate"},  {"mst-paper", "mst_estimate"},
      {"f2-paper", "l2_ams"},       {"f0-paper", "f0_kmv"},
      {"sw-de-paper", "window_distinct_sketch"}};
  auto it = kDefaults.find(cfg.preset);
  if (it == kDefaults.end()) {
    return absl::InvalidArgumentError(absl::StrCat("Unknown preset '", cfg.preset, "'"));
  }
  if (!(n >= 2)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Preset '", cfg.preset, "' needs a dataset of size >= 2"));
  }
  if (cfg.substrate.empty()) cfg.substrate = it->second;
  cfg.wrapper = Wrapper::kLaplace;
  const double c = cfg.preset_c;
  const double log_n = std::log(n);
  if (!cfg.has_delta) cfg.wrap.delta = std::pow(n, -c);
  if (!cfg.has_gamma) cfg.wrap.gamma = c * log_n;
  if (!cfg.has_delta_f) {
    cfg.wrap.delta_f = cfg.preset == "mst-paper" ? max_weight : 2;
  }
  if (cfg.preset == "cc-paper") {
    const double fraction = cfg.wrap.kappa;
    cfg.wrap.kappa = fraction * n;
    if (!cfg.has_tau) cfg.wrap.tau_override = fraction * n / log_n;
  }
  return cfg;
}

absl::StatusOr<CommandOutcome> RunExperiment(const ExperimentConfig& base,
                                             std::ostream& out) {
  if (base.trials < 1) return absl::InvalidArgumentError("trials must be >= 1");
  if (base.input_path.empty()) return absl::InvalidArgumentError("No input file given");
  std::string substrate = base.substrate;
  if (substrate.empty() && !base.preset.empty()) {
    // Resolve the kind from the preset's default substrate.
    DPB_ASSIGN_OR_RETURN(const ExperimentConfig probe, ApplyPreset(base, 2));
    substrate = probe.substrate;
  }
  if (substrate.empty()) return absl::InvalidArgumentError("No substrate given");
  DPB_ASSIGN_OR_RETURN(const SubstrateInfo info, LookupSubstrate(substrate));
  switch (info.kind) {
    case DatasetKind::kGraph: {
      DPB_ASSIGN_OR_RETURN(QueryGraph g, LoadGraph(base.input_path));
      DPB_ASSIGN_OR_RETURN(const ExperimentConfig cfg,
                           ApplyPreset(base, g.num_vertices(), g.max_weight()));
      Runner<QueryGraph> runner(cfg, std::move(g));
      return runner.Run(out);
    }
    case DatasetKind::kKnapsack: {
      if (!base.preset.empty()) {
        return absl::InvalidArgumentError("Presets do not cover knapsack inputs");
      }
      DPB_ASSIGN_OR_RETURN(KnapsackInstance k, LoadKnapsack(base.input_path));
      Runner<KnapsackInstance> runner(base, std::move(k));
      return runner.Run(out);
    }
    case DatasetKind::kStream: {
      DPB_ASSIGN_OR_RETURN(UpdateStream s, LoadStream(base.input_path));
      DPB_ASSIGN_OR_RETURN(const ExperimentConfig cfg,
                           ApplyPreset(base, static_cast<double>(s.length())));
      Runner<UpdateStream> runner(cfg, std::move(s));
      return runner.Run(out);
    }
    case DatasetKind::kWindowedStream: {
      if (base.window < 1) {
        return absl::InvalidArgumentError("Sliding-window substrates need 'window' >= 1");
      }
      DPB_ASSIGN_OR_RETURN(UpdateStream s, LoadStream(base.input_path));
      DPB_ASSIGN_OR_RETURN(const ExperimentConfig cfg,
                           ApplyPreset(base, static_cast<double>(s.length())));
      Runner<WindowedStream> runner(cfg, WindowedStream{std::move(s), base.window});
      return runner.Run(out);
    }
  }
  return absl::InternalError("Unhandled dataset kind");
}

}  // namespace dpb
