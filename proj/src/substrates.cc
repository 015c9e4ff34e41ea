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

#include "dpb/substrates.h"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "dpb/ams_sketch.h"
#include "dpb/framework.h"
#include "dpb/graph_algorithms.h"
#include "dpb/kmv_sketch.h"
#include "dpb/sliding_window.h"
#include "dpb/status_macros.h"

namespace dpb {
namespace {

template <typename Dataset, typename Fn>
TunableSubstrate<Dataset> Make(const char* name, bool deterministic, Fn fn) {
  TunableSubstrate<Dataset> s;
  s.name = name;
  s.deterministic = deterministic;
  s.evaluate = [fn](const Dataset& data, const ApproxParams& params, Rng& rng,
                    ResourceMeter& meter) -> absl::StatusOr<double> {
    DPB_RETURN_IF_ERROR(ValidateApproxParams(params));
    return fn(data, params, rng, meter);
  };
  return s;
}

void ChargeQueries(const QueryGraph& g, const QueryCounts& before,
                   ResourceMeter& meter) {
  meter.queries += g.counts().total() - before.total();
}

absl::StatusOr<double> ExactF2(const UpdateStream& s, ResourceMeter& meter) {
  DPB_RETURN_IF_ERROR(s.Validate());
  meter.items_processed += s.length();
  meter.space_words += s.universe_size;
  return SecondMoment(Frequencies(s));
}

absl::StatusOr<double> AmsF2(const UpdateStream& s, const ApproxParams& p,
                             Rng& rng, ResourceMeter& meter) {
  if (p.alpha == 0 || p.fail_prob == 0) return ExactF2(s, meter);
  DPB_RETURN_IF_ERROR(s.Validate());
  DPB_ASSIGN_OR_RETURN(AmsSketch sketch,
                       AmsSketch::Create(p.alpha, p.fail_prob, rng));
  sketch.Ingest(s);
  meter.items_processed += s.length();
  meter.space_words += sketch.num_counters();
  return sketch.Estimate();
}

absl::StatusOr<double> ExactF0(const UpdateStream& s, ResourceMeter& meter) {
  DPB_RETURN_IF_ERROR(s.Validate());
  if (s.mode != StreamMode::kInsertOnly) {
    return absl::InvalidArgumentError(
        "Distinct elements are defined here for insertion-only streams");
  }
  meter.items_processed += s.length();
  meter.space_words += s.universe_size;
  return static_cast<double>(DistinctCount(Frequencies(s)));
}

absl::StatusOr<double> ExactWindowDistinct(const WindowedStream& w,
                                           ResourceMeter& meter) {
  DPB_RETURN_IF_ERROR(w.stream.Validate());
  if (w.window < 1) return absl::InvalidArgumentError("Window must be positive");
  meter.items_processed += w.stream.length();
  meter.space_words += std::min(w.window, w.stream.length());
  const std::vector<int64_t> freq =
      Frequencies(w.stream, w.stream.length() - w.window, w.stream.length());
  return static_cast<double>(DistinctCount(freq));
}

}  // namespace

TunableSubstrate<QueryGraph> CcExactSubstrate() {
  return Make<QueryGraph>(
      "cc_exact", true,
      [](const QueryGraph& g, const ApproxParams&, Rng&,
         ResourceMeter& meter) -> absl::StatusOr<double> {
        meter.items_processed += g.num_vertices() + g.num_edges();
        return static_cast<double>(CcExact(g));
      });
}

TunableSubstrate<QueryGraph> CcEstimateSubstrate() {
  TunableSubstrate<QueryGraph> s = Make<QueryGraph>(
      "cc_estimate", false,
      [](const QueryGraph& g, const ApproxParams& p, Rng& rng,
         ResourceMeter& meter) -> absl::StatusOr<double> {
        const int n = g.num_vertices();
        if (n == 0) return 0.0;
        if (p.kappa == 0) {
          meter.items_processed += n + g.num_edges();
          return static_cast<double>(CcExact(g));
        }
        DPB_ASSIGN_OR_RETURN(const CcEstimateParams params,
                             CcEstimateParams::Create(p.kappa / n));
        const QueryCounts before = g.counts();
        const double est = CcEstimate(g, params, rng);
        ChargeQueries(g, before, meter);
        return est;
      });
  s.fixed_fail_prob = 1.0 / 3;
  return s;
}

TunableSubstrate<QueryGraph> MstExactSubstrate() {
  return Make<QueryGraph>(
      "mst_exact", true,
      [](const QueryGraph& g, const ApproxParams&, Rng&,
         ResourceMeter& meter) -> absl::StatusOr<double> {
        meter.items_processed += g.num_vertices() + g.num_edges();
        return MstWeightExact(g);
      });
}

TunableSubstrate<QueryGraph> MstEstimateSubstrate() {
  return Make<QueryGraph>(
      "mst_estimate", false,
      [](const QueryGraph& g, const ApproxParams& p, Rng& rng,
         ResourceMeter& meter) -> absl::StatusOr<double> {
        if ((p.alpha == 0 && p.kappa == 0) || p.fail_prob == 0 ||
            g.max_weight() == 1) {
          meter.items_processed += g.num_vertices() + g.num_edges();
          return MstWeightExact(g);
        }
        DPB_ASSIGN_OR_RETURN(
            const MstEstimatePlan plan,
            PlanMstEstimate(g, p.alpha, p.fail_prob, p.kappa));
        const QueryCounts before = g.counts();
        ComponentSizeCache cache;
        absl::StatusOr<double> est =
            MstWeightEstimateWithPlan(g, plan, rng, &cache);
        ChargeQueries(g, before, meter);
        return est;
      });
}

TunableSubstrate<KnapsackInstance> KnapsackExactSubstrate() {
  return Make<KnapsackInstance>(
      "knapsack_exact", true,
      [](const KnapsackInstance& inst, const ApproxParams&, Rng&,
         ResourceMeter& meter) -> absl::StatusOr<double> {
        meter.items_processed += static_cast<int64_t>(inst.sizes.size());
        DPB_ASSIGN_OR_RETURN(const KnapsackSolution sol, KnapsackExact(inst));
        return sol.value;
      });
}

TunableSubstrate<KnapsackInstance> KnapsackFptasSubstrate() {
  return Make<KnapsackInstance>(
      "knapsack_fptas", true,
      [](const KnapsackInstance& inst, const ApproxParams& p, Rng&,
         ResourceMeter& meter) -> absl::StatusOr<double> {
        meter.items_processed += static_cast<int64_t>(inst.sizes.size());
        DPB_ASSIGN_OR_RETURN(const KnapsackSolution sol,
                             KnapsackFptas(inst, p.alpha));
        return sol.value;
      });
}

TunableSubstrate<UpdateStream> F2ExactSubstrate() {
  return Make<UpdateStream>(
      "f2_exact", true,
      [](const UpdateStream& s, const ApproxParams&, Rng&,
         ResourceMeter& meter) { return ExactF2(s, meter); });
}

TunableSubstrate<UpdateStream> F2AmsSubstrate() {
  return Make<UpdateStream>(
      "f2_ams", false,
      [](const UpdateStream& s, const ApproxParams& p, Rng& rng,
         ResourceMeter& meter) { return AmsF2(s, p, rng, meter); });
}

TunableSubstrate<UpdateStream> L2ExactSubstrate() {
  return Make<UpdateStream>(
      "l2_exact", true,
      [](const UpdateStream& s, const ApproxParams&, Rng&,
         ResourceMeter& meter) -> absl::StatusOr<double> {
        DPB_ASSIGN_OR_RETURN(const double f2, ExactF2(s, meter));
        return std::sqrt(f2);
      });
}

TunableSubstrate<UpdateStream> L2AmsSubstrate() {
  return Make<UpdateStream>(
      "l2_ams", false,
      [](const UpdateStream& s, const ApproxParams& p, Rng& rng,
         ResourceMeter& meter) -> absl::StatusOr<double> {
        // (1 +- a) on F2 gives sqrt(1 +- a), inside (1 +- a), on L2.
        DPB_ASSIGN_OR_RETURN(const double f2, AmsF2(s, p, rng, meter));
        return std::sqrt(f2);
      });
}

TunableSubstrate<UpdateStream> F0ExactSubstrate() {
  return Make<UpdateStream>(
      "f0_exact", true,
      [](const UpdateStream& s, const ApproxParams&, Rng&,
         ResourceMeter& meter) { return ExactF0(s, meter); });
}

TunableSubstrate<UpdateStream> F0KmvSubstrate() {
  return Make<UpdateStream>(
      "f0_kmv", false,
      [](const UpdateStream& s, const ApproxParams& p, Rng& rng,
         ResourceMeter& meter) -> absl::StatusOr<double> {
        if (p.alpha == 0 || p.fail_prob == 0) return ExactF0(s, meter);
        DPB_RETURN_IF_ERROR(s.Validate());
        DPB_ASSIGN_OR_RETURN(
            KmvSketch sketch,
            KmvSketch::Create(p.alpha, p.fail_prob, rng, s.mode));
        DPB_RETURN_IF_ERROR(sketch.Ingest(s));
        meter.items_processed += s.length();
        meter.space_words += sketch.space_words();
        return sketch.Estimate();
      });
}

TunableSubstrate<WindowedStream> WindowDistinctExactSubstrate() {
  return Make<WindowedStream>(
      "window_distinct_exact", true,
      [](const WindowedStream& w, const ApproxParams&, Rng&,
         ResourceMeter& meter) { return ExactWindowDistinct(w, meter); });
}

TunableSubstrate<WindowedStream> WindowDistinctSketchSubstrate() {
  return Make<WindowedStream>(
      "window_distinct_sketch", false,
      [](const WindowedStream& w, const ApproxParams& p, Rng& rng,
         ResourceMeter& meter) -> absl::StatusOr<double> {
        if (p.alpha == 0 || p.fail_prob == 0) {
          return ExactWindowDistinct(w, meter);
        }
        DPB_RETURN_IF_ERROR(w.stream.Validate());
        if (w.stream.mode != StreamMode::kInsertOnly) {
          return absl::InvalidArgumentError(
              "Sliding-window distinct elements need an insertion-only stream");
        }
        if (w.stream.length() == 0) return 0.0;
        const double part = p.alpha / 3;
        const SmoothnessParams sp{part, SmoothnessXiDistinct(part)};
        const double bound =
            4 / sp.xi * std::log2(static_cast<double>(w.window) + 2) + 2;
        const double sketch_fail = HistogramSketchFailProb(
            p.fail_prob, w.stream.length(), static_cast<int64_t>(bound));
        DPB_ASSIGN_OR_RETURN(KmvSketch proto,
                             KmvSketch::Create(part, sketch_fail, rng));
        DPB_ASSIGN_OR_RETURN(
            SmoothHistogram<KmvAdapter> h,
            SmoothHistogram<KmvAdapter>::Create(w.window, sp,
                                                KmvAdapter(std::move(proto))));
        int64_t peak = 0;
        for (const Update& u : w.stream.updates) {
          h.Update(u.item);
          peak = std::max(peak, h.space_words());
        }
        meter.items_processed += w.stream.length();
        meter.space_words += peak;
        return h.Query();
      });
}

}  // namespace dpb
