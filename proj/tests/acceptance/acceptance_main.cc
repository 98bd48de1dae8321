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

// Acceptance checks. Each criterion prints one line
//   criterion N: PASS|FAIL <details>
// and the process exits non-zero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "instances.h"
#include "offload/channel.h"
#include "offload/experiments.h"
#include "offload/subproblems.h"
#include "offload_tools/config.h"

namespace offload {
namespace {

namespace fs = std::filesystem;

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Context {
  std::string cli;
  std::string configs;
  int jobs = 1;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

std::string Fmt(const char* format, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof(buffer), format, args...);
  return buffer;
}

ExperimentConfig LoadConfig(const Context& ctx, const std::string& name) {
  return tools::ParseConfigFile(ctx.configs + "/" + name).experiment;
}

// Truncated <= multipath <= bound over a mix of instance families.
Verdict WeakDualitySandwich(const Context& ctx) {
  std::vector<std::pair<ExperimentConfig, uint64_t>> work;
  auto add = [&](ExperimentConfig c, int drops, uint64_t base) {
    for (uint64_t s : DeriveDropSeeds(base, drops)) work.push_back({c, s});
  };
  for (double p : {0.0, 0.1, 0.5}) add(testing::ToyConfig(p), 10, static_cast<uint64_t>(100 + 10 * p));
  for (double p : {0.0, 0.3, 1.0, 4.0}) {
    ExperimentConfig c = testing::SmallUrbanConfig(p);
    add(c, 8, 200);
    c.coupling = Coupling::kSplitSpectrum;
    add(c, 4, 210);
  }
  ExperimentConfig suburban = LoadConfig(ctx, "suburban_macro.cfg");
  for (double p : {0.0, 1.0}) {
    suburban.economics.price_femto = p;
    add(suburban, 10, 300);
  }
  ExperimentConfig urban = LoadConfig(ctx, "urban_micro.cfg");
  for (double p : {0.0, 2.0}) {
    urban.economics.price_femto = p;
    add(urban, 3, 400);
  }
  Stopwatch clock;
  const std::vector<DropResult> drops = RunDrops(work, {ctx.jobs, false});
  const double elapsed = clock.seconds();
  int bad = 0;
  double worst_trunc = -INFINITY, worst_bound = -INFINITY;
  for (const DropResult& d : drops) {
    const double a = d.net_utility - d.multipath_net_utility;
    const double b = d.multipath_net_utility - d.dual_bound;
    worst_trunc = std::max(worst_trunc, a);
    worst_bound = std::max(worst_bound, b);
    if (a > 1e-9 || b > 1e-9 || !d.single_path || d.feasibility > 1e-9) ++bad;
  }
  return {bad == 0 && drops.size() >= 100 && elapsed < 600.0,
          Fmt("%zu drops, %d violations, max(trunc - multi) = %.3g, "
              "max(multi - bound) = %.3g, %.1f s (limit 600 s)",
              drops.size(), bad, worst_trunc, worst_bound, elapsed)};
}

// Exhaustive search on two-cell, three-UE instances.
Verdict BruteForceOracle(const Context&) {
  Stopwatch clock;
  const double prices[] = {0.0, 0.1, 0.5, 1.0};
  int ok = 0, above_bound = 0;
  double worst = INFINITY;
  for (int k = 0; k < 20; ++k) {
    const ExperimentConfig c = testing::ToyConfig(prices[k % 4]);
    const uint64_t seed = 77 + k;
    const auto inst = testing::BuildInstance(c, seed);
    if (inst.problem.num_bs() != 2 || inst.problem.num_ms() != 3) {
      return {false, Fmt("seed %llu: expected 2 cells and 3 UEs",
                         static_cast<unsigned long long>(seed))};
    }
    const double oracle = testing::BruteForceOptimum(inst.problem, 8);
    const DropResult d = RunDrop(c, seed);
    const double margin = (d.net_utility - oracle) / std::abs(oracle);
    worst = std::min(worst, margin);
    if (d.net_utility >= oracle - 0.05 * std::abs(oracle)) ++ok;
    if (d.net_utility > d.dual_bound + 1e-9 || oracle > d.dual_bound + 1e-9) {
      ++above_bound;
    }
  }
  const double elapsed = clock.seconds();
  return {ok >= 18 && above_bound == 0 && elapsed < 300.0,
          Fmt("%d/20 within 5%% of the oracle (need 18), worst relative "
              "margin %+.4f, %d above the dual bound, %.1f s",
              ok, worst, above_bound, elapsed)};
}

// Closed-form and searched subproblem steps against dense grids.
Verdict SubproblemGrids(const Context&) {
  Stopwatch clock;
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto within = [](double solver, double grid) {
    return std::abs(solver - grid) <= 0.01 * std::abs(grid) + 1e-9;
  };
  int fails[4] = {0, 0, 0, 0};
  const int kDraws = 100;
  for (int k = 0; k < kDraws; ++k) {
    // Link rate: min price r + tau/2 (r - r_prev)^2, r >= 0.
    {
      const double r_prev = 10 * u(rng), price = 6 * u(rng) - 3,
                   tau = 0.2 + 2 * u(rng);
      auto f = [&](double r) {
        return price * r + 0.5 * tau * (r - r_prev) * (r - r_prev);
      };
      const double hi = r_prev + std::abs(price) / tau + 1;
      double grid = INFINITY;
      for (int g = 0; g <= 20000; ++g) grid = std::min(grid, f(hi * g / 20000));
      if (!within(f(SolveLinkRate(r_prev, price, tau)), grid)) ++fails[0];
    }
    // BS rate: same with an upper bound.
    {
      const double r_prev = 10 * u(rng), price = 6 * u(rng) - 3,
                   tau = 0.2 + 2 * u(rng), cap = 1 + 20 * u(rng);
      auto f = [&](double r) {
        return price * r + 0.5 * tau * (r - r_prev) * (r - r_prev);
      };
      double grid = INFINITY;
      for (int g = 0; g <= 20000; ++g) grid = std::min(grid, f(cap * g / 20000));
      if (!within(f(SolveBsRate(r_prev, price, cap, tau)), grid)) ++fails[1];
    }
    // MS rate: max log r - tau/2 (r - r_prev)^2 - lambda r, r > 0.
    {
      const double r_prev = 10 * u(rng), lambda = 4 * u(rng) - 1,
                   tau = 0.2 + 2 * u(rng);
      auto f = [&](double r) {
        return std::log(r) - 0.5 * tau * (r - r_prev) * (r - r_prev) -
               lambda * r;
      };
      double grid = -INFINITY;
      for (int g = 0; g <= 20000; ++g) {
        grid = std::max(grid, f(std::pow(10.0, -4 + 6.0 * g / 20000)));
      }
      if (!within(f(SolveMsRate(r_prev, lambda, tau)), grid)) ++fails[2];
    }
    // Bandwidth and interference of one link.
    {
      const RhoCurve curve{std::pow(10.0, 4 * u(rng) - 1), 0.5, 4.8};
      const double z_hi = std::pow(10.0, 5 * u(rng) - 1);
      WzParams p;
      p.mu_r = 3 * u(rng);
      p.lambda_w = 2 * u(rng) - 0.5;
      p.lambda_z = 0.1 * (u(rng) - 0.3);
      p.w_prev = 10 * u(rng);
      p.z_prev = z_hi * u(rng);
      p.w_cap = 10.0;
      p.tau_w = 0.5 + u(rng);
      p.tau_z = 2 * u(rng);
      const WzResult r = SolveWz(p, curve, WzGrid(curve, 1e-3, z_hi, 64));
      double grid = -INFINITY;
      for (int a = 0; a < 600; ++a) {
        const double z = 1e-3 * std::pow(z_hi / 1e-3, a / 599.0);
        for (int b = 0; b <= 600; ++b) {
          grid = std::max(grid, WzObjective(p, curve, p.w_cap * b / 600, z));
        }
      }
      if (!within(WzObjective(p, curve, r.w, r.z), grid)) ++fails[3];
    }
  }
  const double elapsed = clock.seconds();
  const int total = fails[0] + fails[1] + fails[2] + fails[3];
  return {total == 0 && elapsed < 120.0,
          Fmt("%d draws each; mismatches r=%d rBS=%d rMS=%d (w,z)=%d; %.1f s",
              kDraws, fails[0], fails[1], fails[2], fails[3], elapsed)};
}

bool Within(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::abs(b);
}

// An infinite femto price reproduces the operator-only network.
Verdict PriceLimit(const Context& ctx) {
  ExperimentConfig c = LoadConfig(ctx, "urban_micro.cfg");
  c.economics.price_femto = INFINITY;
  SweepSpec spec;
  spec.variable = SweepVariable::kPrice;
  spec.values = {INFINITY};
  spec.drops_per_point = 10;
  const SweepTable t = Sweep(c, spec, 1, {ctx.jobs, false});
  double femto = 0.0;
  int femto_cells = 0;
  for (const DropResult& d : t.points[0].drops) {
    femto += d.femto_backhaul_used_bps;
    femto_cells += d.num_femto;
  }
  const Summary& s = t.points[0].summary;
  const Summary& b = t.baseline;
  const bool ok = femto == 0.0 && femto_cells > 0 &&
                  Within(s.mean_rate_mbps, b.mean_rate_mbps, 0.01) &&
                  Within(s.edge_rate_mbps, b.edge_rate_mbps, 0.01) &&
                  Within(s.geomean_rate_mbps, b.geomean_rate_mbps, 0.01);
  return {ok, Fmt("femto rate %g bps over %d femtocells; mean %.6g/%.6g, "
                  "edge %.6g/%.6g, geomean %.6g/%.6g Mbps (vs baseline)",
                  femto, femto_cells, s.mean_rate_mbps, b.mean_rate_mbps,
                  s.edge_rate_mbps, b.edge_rate_mbps, s.geomean_rate_mbps,
                  b.geomean_rate_mbps)};
}

// Mean-rate gain against femto adoption.
Verdict AdoptionShape(const Context& ctx) {
  Stopwatch clock;
  ExperimentConfig c = LoadConfig(ctx, "urban_micro.cfg");
  c.economics.price_femto = 0.0;
  SweepSpec spec;
  spec.values = {0.0, 0.02, 0.05, 0.10, 0.15, 0.20};
  spec.drops_per_point = 10;
  const SweepTable t = Sweep(c, spec, 1, {ctx.jobs, false});
  std::vector<double> g;
  for (const SweepPoint& p : t.points) g.push_back(p.gains.mean);
  int drops = 0, within_noise = 0;
  for (size_t k = 1; k < g.size(); ++k) {
    if (g[k] < g[k - 1]) {
      ++drops;
      if (g[k] >= g[k - 1] * 0.97) ++within_noise;
    }
  }
  const bool ok = g[0] == 1.0 && g[1] > 1.0 &&
                  (drops == 0 || (drops == 1 && within_noise == 1));
  std::string curve;
  for (double v : g) curve += Fmt("%.4g ", v);
  return {ok, Fmt("mean gain at 0/2/5/10/15/20%%: %s; %d decreasing pairs; "
                  "%.0f s",
                  curve.c_str(), drops, clock.seconds())};
}

// Pooled rates of drop indices `pick`, sorted.
std::vector<double> Pool(const SweepPoint& p, const std::vector<int>& pick) {
  std::vector<double> out;
  for (int d : pick) {
    for (double r : p.drops[d].per_ms_rate_bps) out.push_back(r * 1e-6);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Lower prices shift the rate distribution up.
Verdict PriceOrdering(const Context& ctx) {
  Stopwatch clock;
  ExperimentConfig c = LoadConfig(ctx, "urban_micro.cfg");
  c.scenario.adoption_rate = 0.05;
  SweepSpec spec;
  spec.variable = SweepVariable::kPrice;
  spec.values = {0.0, 1.0, 4.0, 8.0, INFINITY};
  spec.drops_per_point = 10;
  const SweepTable t = Sweep(c, spec, 1, {ctx.jobs, false});
  const int n = spec.drops_per_point;
  std::vector<int> all(n);
  for (int d = 0; d < n; ++d) all[d] = d;
  // Paired cluster bootstrap over drops; a decile is out of order only when
  // the whole 95% band of q(lower price) - q(higher price) sits below zero.
  // The criterion is the p = 0 against p = inf pair; the other pairs are
  // reported for information.
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> pick(0, n - 1);
  int violations = 0;
  double worst_point = INFINITY;
  std::string others;
  for (size_t a = 0; a + 1 < t.points.size(); ++a) {
    for (size_t b = a + 1; b < t.points.size(); ++b) {
      const bool headline = a == 0 && b + 1 == t.points.size();
      const auto lo = Pool(t.points[a], all), hi = Pool(t.points[b], all);
      for (int dec = 1; dec <= 9; ++dec) {
        const double q = dec / 10.0;
        const double raw = Percentile(lo, q) - Percentile(hi, q);
        if (headline) worst_point = std::min(worst_point, raw);
        std::vector<double> diffs;
        for (int boot = 0; boot < 1000; ++boot) {
          std::vector<int> sample(n);
          for (int& s : sample) s = pick(rng);
          diffs.push_back(Percentile(Pool(t.points[a], sample), q) -
                          Percentile(Pool(t.points[b], sample), q));
        }
        if (Percentile(diffs, 0.975) >= 0.0) continue;
        if (headline) {
          ++violations;
        } else {
          others += Fmt(" p=%g<p=%g@q%.1f(%.3g)", t.points[a].value,
                        t.points[b].value, q, raw);
        }
      }
    }
  }
  const auto& d0 = t.points.front().pooled_rates_mbps;
  const auto& dinf = t.points.back().pooled_rates_mbps;
  return {violations == 0,
          Fmt("p=0 vs p=inf: %d/9 deciles outside the bootstrap band, "
              "smallest decile difference %.3g Mbps, median %.4g vs %.4g "
              "Mbps; other price pairs out of order:%s; %.0f s",
              violations, worst_point, Percentile(d0, 0.5),
              Percentile(dinf, 0.5), others.empty() ? " none" : others.c_str(),
              clock.seconds())};
}

// Cell splitting against offload.
Verdict BackhaulHarness(const Context& ctx) {
  Stopwatch clock;
  const ExperimentConfig c = LoadConfig(ctx, "urban_micro.cfg");
  const BackhaulComparison cmp =
      CompareBackhaul(c, CompareSpec{}, 1, {ctx.jobs, false});
  auto monotone = [](const std::vector<BackhaulPoint>& v) {
    for (size_t k = 1; k < v.size(); ++k) {
      if (v[k].geomean_rate_mbps < v[k - 1].geomean_rate_mbps ||
          v[k].additional_backhaul_mbps < v[k - 1].additional_backhaul_mbps) {
        return false;
      }
    }
    return !v.empty();
  };
  const auto& split = cmp.cell_splitting;
  const auto& off = cmp.femto_offload;
  const bool ends =
      !split.empty() && !off.empty() && split.front().parameter == 1.0 &&
      std::isinf(off.front().parameter) &&
      std::abs(split.front().geomean_rate_mbps - cmp.baseline_geomean_mbps) <=
          1e-9 &&
      std::abs(off.front().geomean_rate_mbps - cmp.baseline_geomean_mbps) <=
          1e-9 &&
      split.front().additional_backhaul_mbps == 0.0 &&
      off.front().additional_backhaul_mbps == 0.0;
  std::string curves;
  for (const auto& p : split) {
    curves += Fmt("a=%g:(%.4g,%.4g) ", p.parameter, p.additional_backhaul_mbps,
                  p.geomean_rate_mbps);
  }
  for (const auto& p : off) {
    curves += Fmt("p=%g:(%.4g,%.4g) ", p.parameter, p.additional_backhaul_mbps,
                  p.geomean_rate_mbps);
  }
  return {ends && monotone(split) && monotone(off),
          Fmt("split %s, offload %s, endpoints %s; %s%.0f s",
              monotone(split) ? "monotone" : "NOT monotone",
              monotone(off) ? "monotone" : "NOT monotone",
              ends ? "match baseline" : "DIFFER", curves.c_str(),
              clock.seconds())};
}

// Channel model reference values.
Verdict ChannelReference(const Context&) {
  const ChannelParams p;
  std::vector<std::string> bad;
  auto near = [&](const char* what, double got, double want, double tol) {
    if (!(std::abs(got - want) <= tol)) {
      bad.push_back(Fmt("%s=%.6g (want %.6g)", what, got, want));
    }
  };
  near("rho(1e9)", SpectralEfficiency(1e9, p), 4.8, 0.0);
  near("rho(1e3)", SpectralEfficiency(1e3, p), 4.8, 0.0);
  near("rho(10)", SpectralEfficiency(10.0, p),
       std::log2(1 + std::pow(10.0, -0.3) * 10), 1e-12);
  near("PL(100 m)", PathlossDbAtDistance(100, 0, p), 90.5, 0.1);
  near("PL(100 m, wall)", PathlossDbAtDistance(100, 20, p), 110.5, 0.1);
  near("PL(1 km)", PathlossDbAtDistance(1000, 0, p), 128.1, 0.1);
  near("A(0)", AntennaGainDb(0, 0, p), 0.0, 0.1);
  near("A(70)", AntennaGainDb(0, 70, p), -12.0, 0.1);
  near("A(180)", AntennaGainDb(0, 180, p), -25.0, 0.1);

  Scenario s;
  for (int j = 0; j < 2; ++j) {
    BaseStation b;
    b.site = j;
    s.bs.push_back(b);
  }
  const int n = 50000;
  for (int i = 0; i < n; ++i) s.ms.push_back({i, {0, 0}});
  const ShadowField f = DrawShadowing(s, p, 99);
  double ma = 0, mb = 0;
  for (int i = 0; i < n; ++i) {
    ma += f.at(i, 0) / n;
    mb += f.at(i, 1) / n;
  }
  double saa = 0, sbb = 0, sab = 0;
  for (int i = 0; i < n; ++i) {
    const double a = f.at(i, 0) - ma, b = f.at(i, 1) - mb;
    saa += a * a;
    sbb += b * b;
    sab += a * b;
  }
  const double corr = sab / std::sqrt(saa * sbb);
  near("shadow corr", corr, 0.5, 0.02);
  std::string detail = Fmt("rho cap %.6g, shadow corr %.4f",
                           SpectralEfficiency(1e9, p), corr);
  for (const auto& b : bad) detail += "; " + b;
  return {bad.empty(), detail};
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

// Repeated CLI invocations write identical bytes.
Verdict CliDeterminism(const Context& ctx) {
  if (ctx.cli.empty()) return {false, "no --cli given"};
  const fs::path root = fs::temp_directory_path() / "offload_acceptance_c9";
  fs::remove_all(root);
  const std::string toy = ctx.configs + "/toy_oracle.cfg";
  const std::string urban = ctx.configs + "/urban_micro.cfg";
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"run", "run --config " + toy},
      {"sweep", "sweep --config " + toy + " --drops 3 --trace"},
      {"compare", "compare-backhaul --config " + toy + " --drops 2"},
      {"urban", "run --config " + urban + " --drops 1"},
  };
  int compared = 0;
  std::vector<std::string> diffs;
  for (const auto& [name, args] : cases) {
    for (const char* rep : {"a", "b"}) {
      const fs::path out = root / name / rep;
      const std::string cmd =
          "\"" + ctx.cli + "\" " + args + " --out \"" + out.string() +
          "\" > /dev/null";
      if (std::system(cmd.c_str()) != 0) {
        return {false, "command failed: " + cmd};
      }
    }
    for (const auto& e :
         fs::recursive_directory_iterator(root / name / "a")) {
      if (!e.is_regular_file() || e.path().extension() != ".csv") continue;
      const fs::path rel = fs::relative(e.path(), root / name / "a");
      ++compared;
      if (Slurp(e.path()) != Slurp(root / name / "b" / rel)) {
        diffs.push_back(name + "/" + rel.string());
      }
    }
  }
  fs::remove_all(root);
  std::string detail = Fmt("%d CSV files compared across %zu commands, %zu "
                           "differ",
                           compared, cases.size(), diffs.size());
  for (const auto& d : diffs) detail += " " + d;
  return {diffs.empty() && compared > 0, detail};
}

}  // namespace
}  // namespace offload

int main(int argc, char** argv) {
  using namespace offload;
  CLI::App app{"Acceptance checks"};
  std::vector<int> criteria;
  Context ctx;
  ctx.configs = std::string(OFFLOAD_SOURCE_DIR) + "/configs";
  app.add_option("--criterion", criteria, "Criteria to run (default: all)")
      ->check(CLI::Range(1, 9));
  app.add_option("--cli", ctx.cli, "Path of the offload executable");
  app.add_option("--configs", ctx.configs, "Directory with shipped configs");
  app.add_option("--jobs", ctx.jobs, "Worker threads")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);
  if (criteria.empty()) criteria = {1, 2, 3, 4, 5, 6, 7, 8, 9};

  const std::function<Verdict(const Context&)> checks[] = {
      WeakDualitySandwich, BruteForceOracle, SubproblemGrids,
      PriceLimit,          AdoptionShape,    PriceOrdering,
      BackhaulHarness,     ChannelReference, CliDeterminism};
  bool all = true;
  for (int c : criteria) {
    Verdict v;
    try {
      v = checks[c - 1](ctx);
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::cout << "criterion " << c << ": " << (v.pass ? "PASS" : "FAIL") << " "
              << v.detail << std::endl;
    all = all && v.pass;
  }
  return all ? 0 : 1;
}
