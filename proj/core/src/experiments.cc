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

#include "offload/experiments.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <set>
#include <thread>

#include "offload/errors.h"
#include "offload/problem.h"
#include "offload/recovery.h"
#include "offload/rng.h"

namespace offload {

double DropResult::DualGap() const {
  return (dual_bound - net_utility) / std::max(std::abs(dual_bound), 1e-12);
}

DropResult RunDrop(const ExperimentConfig& config, uint64_t seed,
                   bool record_trace) {
  const auto start = std::chrono::steady_clock::now();
  ScenarioConfig sc = config.scenario;
  sc.femto_price_per_mbps = config.economics.price_femto;
  const Scenario scenario = GenerateStochastic(sc, seed);
  LinkGraphOptions options;
  options.include_femtos = !config.economics.FemtoExcluded();
  const LinkGraph graph = BuildLinkGraph(scenario, config.channel,
                                         config.coupling, seed, options);
  const Problem problem =
      Assemble(graph, scenario, config.economics, config.channel);
  DualAscentResult solved;
  try {
    solved = DualAscent(problem, config.solver, record_trace);
  } catch (const SolverError& e) {
    throw SolverError("drop seed " + std::to_string(seed) + ": " + e.what());
  }
  const Solution final = TruncateSinglePath(solved.multipath, problem);

  DropResult out;
  out.seed = seed;
  out.per_ms_rate_bps = final.per_ms_rate_bps;
  out.per_bs_rate_bps = final.per_bs_rate_bps;
  for (size_t j = 0; j < scenario.bs.size(); ++j) {
    if (IsOperator(scenario.bs[j].cls)) {
      out.operator_rate_bps += final.per_bs_rate_bps[j];
    } else {
      out.femto_backhaul_used_bps += final.per_bs_rate_bps[j];
    }
  }
  out.net_utility = final.net_utility;
  out.multipath_net_utility = solved.multipath.net_utility;
  out.dual_bound = solved.dual_bound;
  out.feasibility = final.feasibility.max_violation;
  out.single_path = final.single_path;
  out.solver_iters = solved.iterations;
  out.num_femto = scenario.NumFemtoCells();
  out.num_links = problem.num_links();
  out.floored_ms = final.floored_ms;
  out.trace = std::move(solved.trace);
  out.wall_time_s = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - start)
                        .count();
  return out;
}

double Percentile(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const double pos = (values.size() - 1) * q;
  const size_t lo = static_cast<size_t>(std::floor(pos));
  const size_t hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - lo) * (values[hi] - values[lo]);
}

Summary ComputeMetrics(std::span<const DropResult> drops,
                       double rate_floor_bps) {
  Summary s;
  if (drops.empty()) return s;
  const double floor = rate_floor_bps * 1e-6;
  double sum = 0.0, log_sum = 0.0, edge = 0.0;
  size_t count = 0;
  std::vector<double> gaps;
  for (const DropResult& d : drops) {
    std::vector<double> mbps;
    for (double r : d.per_ms_rate_bps) {
      mbps.push_back(r * 1e-6);
      sum += r * 1e-6;
      log_sum += std::log(std::max(r * 1e-6, floor));
      ++count;
    }
    edge += Percentile(std::move(mbps), 0.05);
    gaps.push_back(d.DualGap());
  }
  s.mean_rate_mbps = count ? sum / count : 0.0;
  s.geomean_rate_mbps = count ? std::exp(log_sum / count) : 0.0;
  s.edge_rate_mbps = edge / drops.size();
  s.dual_gap_median = Percentile(std::move(gaps), 0.5);
  return s;
}

Gains ComputeGains(const Summary& point, const Summary& baseline) {
  auto ratio = [](double a, double b) { return a == b ? 1.0 : a / b; };
  return {ratio(point.mean_rate_mbps, baseline.mean_rate_mbps),
          ratio(point.edge_rate_mbps, baseline.edge_rate_mbps),
          ratio(point.geomean_rate_mbps, baseline.geomean_rate_mbps)};
}

const char* SweepVariableName(SweepVariable v) {
  switch (v) {
    case SweepVariable::kAdoptionRate:
      return "adoption_rate";
    case SweepVariable::kPrice:
      return "price";
    case SweepVariable::kSplitFactor:
      return "split_factor";
  }
  return "?";
}

std::vector<uint64_t> DeriveDropSeeds(uint64_t base_seed, int drops) {
  std::vector<uint64_t> seeds;
  std::set<uint64_t> seen;
  for (int d = 0; d < drops; ++d) {
    const uint64_t s = MixSeed(base_seed, static_cast<uint64_t>(d));
    if (!seen.insert(s).second) {
      throw ConfigError("derived drop seeds collide; change base_seed");
    }
    seeds.push_back(s);
  }
  return seeds;
}

ExperimentConfig WithSweepValue(const ExperimentConfig& base,
                                SweepVariable variable, double value) {
  ExperimentConfig c = base;
  switch (variable) {
    case SweepVariable::kAdoptionRate:
      c.scenario.adoption_rate = value;
      break;
    case SweepVariable::kPrice:
      c.economics.price_femto = value;
      break;
    case SweepVariable::kSplitFactor:
      c.scenario.split_factor = value;
      break;
  }
  return c;
}

ExperimentConfig BaselineConfig(const ExperimentConfig& base) {
  ExperimentConfig c = base;
  c.scenario.adoption_rate = 0.0;
  c.scenario.split_factor = 1.0;
  return c;
}

std::vector<DropResult> RunDrops(
    const std::vector<std::pair<ExperimentConfig, uint64_t>>& work,
    const ExecutionOptions& exec) {
  std::vector<DropResult> results(work.size());
  std::vector<std::exception_ptr> errors(work.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t k = next++; k < work.size(); k = next++) {
      try {
        results[k] = RunDrop(work[k].first, work[k].second, exec.record_trace);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const int jobs =
      std::max(1, std::min<int>(exec.jobs, static_cast<int>(work.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int k = 0; k < jobs; ++k) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

namespace {

void Pool(SweepPoint& point) {
  for (const DropResult& d : point.drops) {
    for (double r : d.per_ms_rate_bps) point.pooled_rates_mbps.push_back(r * 1e-6);
  }
  std::sort(point.pooled_rates_mbps.begin(), point.pooled_rates_mbps.end());
}

}  // namespace

SweepTable Sweep(const ExperimentConfig& base, const SweepSpec& spec,
                 uint64_t base_seed, const ExecutionOptions& exec) {
  if (spec.values.empty()) throw ConfigError("sweep values are empty");
  if (spec.drops_per_point < 1) throw ConfigError("drops_per_point must be >= 1");
  const std::vector<uint64_t> seeds =
      DeriveDropSeeds(base_seed, spec.drops_per_point);
  std::vector<std::pair<ExperimentConfig, uint64_t>> work;
  const ExperimentConfig baseline = BaselineConfig(base);
  for (uint64_t s : seeds) work.emplace_back(baseline, s);
  for (double v : spec.values) {
    const ExperimentConfig c = WithSweepValue(base, spec.variable, v);
    c.scenario.Validate();
    c.economics.Validate();
    for (uint64_t s : seeds) work.emplace_back(c, s);
  }
  std::vector<DropResult> results = RunDrops(work, exec);

  SweepTable table;
  table.variable = spec.variable;
  const size_t d = seeds.size();
  table.baseline = ComputeMetrics(
      std::span<const DropResult>(results.data(), d),
      base.economics.rate_floor_bps);
  for (size_t k = 0; k < spec.values.size(); ++k) {
    SweepPoint point;
    point.value = spec.values[k];
    auto first = results.begin() + (k + 1) * d;
    point.drops.assign(std::make_move_iterator(first),
                       std::make_move_iterator(first + d));
    point.summary =
        ComputeMetrics(point.drops, base.economics.rate_floor_bps);
    point.gains = ComputeGains(point.summary, table.baseline);
    Pool(point);
    table.points.push_back(std::move(point));
  }
  return table;
}

BackhaulComparison CompareBackhaul(const ExperimentConfig& base,
                                   const CompareSpec& spec, uint64_t base_seed,
                                   const ExecutionOptions& exec) {
  if (spec.drops < 1) throw ConfigError("compare drops must be >= 1");
  std::vector<double> alphas = spec.split_factors;
  std::vector<double> prices = spec.prices;
  for (double a : alphas) {
    if (!(a >= 1.0)) throw ConfigError("split factors must be >= 1");
  }
  for (double p : prices) {
    if (!(p >= 0.0)) throw ConfigError("prices must be >= 0");
  }
  std::sort(alphas.begin(), alphas.end());
  alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
  if (alphas.empty() || alphas.front() != 1.0) alphas.insert(alphas.begin(), 1.0);
  std::sort(prices.begin(), prices.end(), std::greater<>());
  prices.erase(std::unique(prices.begin(), prices.end()), prices.end());

  const std::vector<uint64_t> seeds = DeriveDropSeeds(base_seed, spec.drops);
  const ExperimentConfig split_base = BaselineConfig(base);
  ExperimentConfig offload_base = split_base;
  offload_base.scenario.adoption_rate = spec.offload_adoption;
  std::vector<std::pair<ExperimentConfig, uint64_t>> work;
  for (double a : alphas) {
    const ExperimentConfig c =
        WithSweepValue(split_base, SweepVariable::kSplitFactor, a);
    c.scenario.Validate();
    for (uint64_t s : seeds) work.emplace_back(c, s);
  }
  for (double p : prices) {
    const ExperimentConfig c =
        WithSweepValue(offload_base, SweepVariable::kPrice, p);
    c.scenario.Validate();
    for (uint64_t s : seeds) work.emplace_back(c, s);
  }
  const std::vector<DropResult> results = RunDrops(work, exec);
  const size_t d = seeds.size();
  const double floor = base.economics.rate_floor_bps;
  auto slice = [&](size_t block) {
    return std::span<const DropResult>(results.data() + block * d, d);
  };

  BackhaulComparison out;
  const auto reference = slice(0);  // alpha = 1
  out.baseline_geomean_mbps = ComputeMetrics(reference, floor).geomean_rate_mbps;
  for (size_t k = 0; k < alphas.size(); ++k) {
    const auto drops = slice(k);
    double extra = 0.0;
    for (size_t i = 0; i < d; ++i) {
      extra += (drops[i].operator_rate_bps - reference[i].operator_rate_bps);
    }
    out.cell_splitting.push_back(
        {alphas[k], extra * 1e-6 / d,
         ComputeMetrics(drops, floor).geomean_rate_mbps});
  }
  for (size_t k = 0; k < prices.size(); ++k) {
    const auto drops = slice(alphas.size() + k);
    double extra = 0.0;
    for (const DropResult& r : drops) extra += r.femto_backhaul_used_bps;
    out.femto_offload.push_back(
        {prices[k], extra * 1e-6 / d,
         ComputeMetrics(drops, floor).geomean_rate_mbps});
  }
  return out;
}

std::string FormatNumber(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6g", v);
  return buffer;
}

void WriteSummaryCsv(const SweepTable& table, std::ostream& out) {
  out << "point,mean_rate_mbps,edge_rate_mbps,geomean_rate_mbps,gain_mean,"
         "gain_edge,gain_geomean,dual_gap_median\n";
  for (const SweepPoint& p : table.points) {
    out << FormatNumber(p.value) << ',' << FormatNumber(p.summary.mean_rate_mbps)
        << ',' << FormatNumber(p.summary.edge_rate_mbps) << ','
        << FormatNumber(p.summary.geomean_rate_mbps) << ','
        << FormatNumber(p.gains.mean) << ',' << FormatNumber(p.gains.edge)
        << ',' << FormatNumber(p.gains.geomean) << ','
        << FormatNumber(p.summary.dual_gap_median) << '\n';
  }
}

void WriteCdfCsv(const SweepTable& table, std::ostream& out) {
  out << "point,rate_mbps,empirical_cdf\n";
  for (const SweepPoint& p : table.points) {
    const std::string label = FormatNumber(p.value);
    const size_t n = p.pooled_rates_mbps.size();
    for (size_t k = 0; k < n; ++k) {
      out << label << ',' << FormatNumber(p.pooled_rates_mbps[k]) << ','
          << FormatNumber(static_cast<double>(k + 1) / n) << '\n';
    }
  }
}

void WriteDropsCsv(const SweepTable& table, std::ostream& out) {
  out << "point,drop,seed,net_utility,multipath_net_utility,dual_bound,"
         "dual_gap,iterations,links,femtos,femto_backhaul_mbps,"
         "operator_rate_mbps,floored_ms\n";
  for (const SweepPoint& p : table.points) {
    for (size_t k = 0; k < p.drops.size(); ++k) {
      const DropResult& d = p.drops[k];
      out << FormatNumber(p.value) << ',' << k << ',' << d.seed << ','
          << FormatNumber(d.net_utility) << ','
          << FormatNumber(d.multipath_net_utility) << ','
          << FormatNumber(d.dual_bound) << ',' << FormatNumber(d.DualGap())
          << ',' << d.solver_iters << ',' << d.num_links << ',' << d.num_femto
          << ',' << FormatNumber(d.femto_backhaul_used_bps * 1e-6) << ','
          << FormatNumber(d.operator_rate_bps * 1e-6) << ',' << d.floored_ms
          << '\n';
    }
  }
}

void WriteBackhaulCsv(const BackhaulComparison& cmp, std::ostream& out) {
  out << "method,additional_backhaul_mbps,geomean_rate_mbps\n";
  for (const BackhaulPoint& p : cmp.cell_splitting) {
    out << "cell_splitting," << FormatNumber(p.additional_backhaul_mbps) << ','
        << FormatNumber(p.geomean_rate_mbps) << '\n';
  }
  for (const BackhaulPoint& p : cmp.femto_offload) {
    out << "femto_offload," << FormatNumber(p.additional_backhaul_mbps) << ','
        << FormatNumber(p.geomean_rate_mbps) << '\n';
  }
}

void WriteTraceCsv(const std::vector<TraceRow>& trace, std::ostream& out) {
  out << "iter,net_utility,dual_bound,max_violation,step\n";
  for (const TraceRow& r : trace) {
    out << r.iter << ',' << FormatNumber(r.net_utility) << ','
        << FormatNumber(r.dual_bound) << ',' << FormatNumber(r.max_violation)
        << ',' << FormatNumber(r.step) << '\n';
  }
}

}  // namespace offload
