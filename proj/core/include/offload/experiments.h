// Copyright 2026 The Offload Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OFFLOAD_EXPERIMENTS_H_
#define OFFLOAD_EXPERIMENTS_H_

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "offload/channel.h"
#include "offload/dual_solver.h"
#include "offload/economics.h"
#include "offload/link_graph.h"
#include "offload/scenario.h"

namespace offload {

struct ExperimentConfig {
  ScenarioConfig scenario;
  ChannelParams channel;
  Coupling coupling = Coupling::kCoChannel;
  SolverConfig solver;
  EconomicsModel economics;
};

struct DropResult {
  uint64_t seed = 0;
  std::vector<double> per_ms_rate_bps;
  std::vector<double> per_bs_rate_bps;
  double femto_backhaul_used_bps = 0.0;
  double operator_rate_bps = 0.0;  // total carried by operator cells
  double net_utility = 0.0;        // single-path
  double multipath_net_utility = 0.0;
  double dual_bound = 0.0;
  double feasibility = 0.0;        // single-path, relative
  bool single_path = false;
  int solver_iters = 0;
  int num_femto = 0;
  int num_links = 0;
  int floored_ms = 0;
  double wall_time_s = 0.0;
  std::vector<TraceRow> trace;

  // (bound - achieved) / |bound|.
  double DualGap() const;
};

// scenario -> link graph -> problem -> dual ascent -> truncation.
DropResult RunDrop(const ExperimentConfig& config, uint64_t seed,
                   bool record_trace = false);

struct Summary {
  double mean_rate_mbps = 0.0;
  double edge_rate_mbps = 0.0;     // mean over drops of the 5th percentile
  double geomean_rate_mbps = 0.0;  // exp(mean log floored rate)
  double dual_gap_median = 0.0;
};

struct Gains {
  double mean = 1.0;
  double edge = 1.0;
  double geomean = 1.0;
};

// Linear interpolation at position (n - 1) q of the sorted values.
double Percentile(std::vector<double> values, double q);
Summary ComputeMetrics(std::span<const DropResult> drops,
                       double rate_floor_bps);
Gains ComputeGains(const Summary& point, const Summary& baseline);

enum class SweepVariable { kAdoptionRate, kPrice, kSplitFactor };
const char* SweepVariableName(SweepVariable v);

struct SweepSpec {
  SweepVariable variable = SweepVariable::kAdoptionRate;
  std::vector<double> values;
  int drops_per_point = 10;
};

struct ExecutionOptions {
  int jobs = 1;
  bool record_trace = false;
};

struct SweepPoint {
  double value = 0.0;
  Summary summary;
  Gains gains;
  std::vector<double> pooled_rates_mbps;  // sorted ascending
  std::vector<DropResult> drops;
};

struct SweepTable {
  SweepVariable variable = SweepVariable::kAdoptionRate;
  Summary baseline;
  std::vector<SweepPoint> points;
};

// Drop d of every point uses the same seed (common random numbers), so a
// point differs from the baseline only through the swept knob. Throws if two
// derived seeds collide.
std::vector<uint64_t> DeriveDropSeeds(uint64_t base_seed, int drops);

ExperimentConfig WithSweepValue(const ExperimentConfig& base,
                                SweepVariable variable, double value);
// Operator-only reference: no femtocells, no splitting.
ExperimentConfig BaselineConfig(const ExperimentConfig& base);

SweepTable Sweep(const ExperimentConfig& base, const SweepSpec& spec,
                 uint64_t base_seed, const ExecutionOptions& exec);

struct CompareSpec {
  std::vector<double> split_factors = {1.0, 1.5, 2.0, 3.0};
  std::vector<double> prices = {INFINITY, 8.0, 4.0, 1.0, 0.0};
  double offload_adoption = 0.05;
  int drops = 10;
};

struct BackhaulPoint {
  double parameter = 0.0;  // split factor or price
  double additional_backhaul_mbps = 0.0;
  double geomean_rate_mbps = 0.0;
};

struct BackhaulComparison {
  std::vector<BackhaulPoint> cell_splitting;  // ascending split factor
  std::vector<BackhaulPoint> femto_offload;   // descending price
  double baseline_geomean_mbps = 0.0;
};

// Cell splitting: extra backhaul is the operator-carried rate above the
// unsplit layout of the same drop. Offload: fixed adoption, the price sweeps
// from high to zero and extra backhaul is the femto-carried rate.
BackhaulComparison CompareBackhaul(const ExperimentConfig& base,
                                   const CompareSpec& spec, uint64_t base_seed,
                                   const ExecutionOptions& exec);

// Runs config/seed pairs on `jobs` threads; results keep input order.
std::vector<DropResult> RunDrops(
    const std::vector<std::pair<ExperimentConfig, uint64_t>>& work,
    const ExecutionOptions& exec);

// CSV output, floats with 6 significant digits.
std::string FormatNumber(double v);
void WriteSummaryCsv(const SweepTable& table, std::ostream& out);
void WriteCdfCsv(const SweepTable& table, std::ostream& out);
void WriteDropsCsv(const SweepTable& table, std::ostream& out);
void WriteBackhaulCsv(const BackhaulComparison& cmp, std::ostream& out);
void WriteTraceCsv(const std::vector<TraceRow>& trace, std::ostream& out);

}  // namespace offload

#endif  // OFFLOAD_EXPERIMENTS_H_
