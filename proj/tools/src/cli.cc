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

#include "offload_tools/cli.h"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "offload/errors.h"
#include "offload/experiments.h"
#include "offload/version.h"
#include "offload_tools/config.h"

namespace offload::tools {
namespace {

namespace fs = std::filesystem;

struct Flags {
  std::string config;
  std::optional<uint64_t> seed;
  std::optional<int> drops;
  std::optional<std::string> out;
  int jobs = 0;
  bool trace = false;
};

void AddFlags(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--config", flags.config, "Configuration file")->required();
  cmd->add_option("--seed", flags.seed, "Base seed (overrides the config)");
  cmd->add_option("--drops", flags.drops, "Drops per point")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", flags.out, "Output directory");
  cmd->add_option("--jobs", flags.jobs,
                  "Worker threads (default: hardware concurrency)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_flag("--trace", flags.trace, "Write per-drop solver traces");
}

void WriteFile(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

template <typename Fn>
std::string Render(Fn&& fn) {
  std::ostringstream out;
  fn(out);
  return out.str();
}

std::string MetaText(const std::string& command, const RunConfig& config,
                     double wall_time_s) {
  // Derived layout parameters of the first drop of the operator-only
  // reference; they do not depend on the seed.
  ExperimentConfig probe = BaselineConfig(config.experiment);
  const Scenario layout = GenerateStochastic(
      probe.scenario, DeriveDropSeeds(config.base_seed, 1).front());
  char line[256];
  std::string out;
  out += "# offload " + std::string(VersionString()) + "\n";
  out += "# command: " + command + "\n";
  std::snprintf(line, sizeof(line), "# base_seed: %llu\n",
                static_cast<unsigned long long>(config.base_seed));
  out += line;
  std::snprintf(line, sizeof(line), "# wall_time_s: %.3f\n", wall_time_s);
  out += line;
  std::snprintf(line, sizeof(line),
                "# derived: inter_site_distance_m %.6g, sites %d, area %.6g x "
                "%.6g m\n",
                layout.inter_site_distance_m, layout.num_sites,
                layout.area.width_m, layout.area.height_m);
  out += line;
  if (!config.operator_site_file.empty() || !config.ap_site_file.empty()) {
    std::snprintf(line, sizeof(line),
                  "# site rows outside the area: operator %d, ap %d\n",
                  config.operator_sites_rejected, config.ap_sites_rejected);
    out += line;
  }
  out +=
      "# mean_rate: mean UE rate over all UEs of all drops\n"
      "# edge_rate: mean over drops of the 5th percentile UE rate (linear "
      "interpolation)\n"
      "# geomean_rate: exp(mean log(max(rate, rate_floor)))\n"
      "# gains: ratio to the operator-only unsplit layout on the same drop "
      "seeds\n"
      "# dual_gap: (dual bound - net utility) / |dual bound|, median over "
      "drops\n"
      "# additional_backhaul: cell splitting counts operator-carried rate "
      "above the unsplit layout of the same drop; femto offload counts "
      "femto-carried rate\n"
      "# cdf: UE rates pooled over the drops of a point\n"
      "# Rerun with: offload " +
      command + " --config meta.txt\n\n";
  out += EchoConfig(config);
  return out;
}

void WriteSweepOutputs(const SweepTable& table, const fs::path& dir,
                       bool trace) {
  WriteFile(dir / "summary.csv",
            Render([&](std::ostream& o) { WriteSummaryCsv(table, o); }));
  WriteFile(dir / "cdf.csv",
            Render([&](std::ostream& o) { WriteCdfCsv(table, o); }));
  WriteFile(dir / "drops.csv",
            Render([&](std::ostream& o) { WriteDropsCsv(table, o); }));
  if (!trace) return;
  fs::create_directories(dir / "traces");
  for (size_t k = 0; k < table.points.size(); ++k) {
    const SweepPoint& point = table.points[k];
    for (size_t d = 0; d < point.drops.size(); ++d) {
      const std::string name =
          "point" + std::to_string(k) + "_drop" + std::to_string(d) + ".csv";
      WriteFile(dir / "traces" / name, Render([&](std::ostream& o) {
                  WriteTraceCsv(point.drops[d].trace, o);
                }));
    }
  }
}

int Execute(const std::string& command, const Flags& flags,
            std::ostream& out) {
  RunConfig config = ParseConfigFile(flags.config);
  if (flags.seed) config.base_seed = *flags.seed;
  if (flags.drops) {
    config.drops = *flags.drops;
    config.sweep.drops_per_point = *flags.drops;
    config.compare.drops = *flags.drops;
  }
  if (flags.out) config.output_dir = *flags.out;

  if (command == "validate") {
    out << "ok: " << flags.config << "\n" << EchoConfig(config);
    return kExitOk;
  }

  ExecutionOptions exec;
  exec.jobs = flags.jobs > 0
                  ? flags.jobs
                  : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  exec.record_trace = flags.trace;
  const fs::path dir(config.output_dir);
  fs::create_directories(dir);
  const auto start = std::chrono::steady_clock::now();

  if (command == "compare-backhaul") {
    const BackhaulComparison cmp =
        CompareBackhaul(config.experiment, config.compare, config.base_seed, exec);
    WriteFile(dir / "backhaul.csv",
              Render([&](std::ostream& o) { WriteBackhaulCsv(cmp, o); }));
  } else {
    SweepSpec spec = config.sweep;
    if (command == "run") {
      spec.variable = SweepVariable::kAdoptionRate;
      spec.values = {config.experiment.scenario.adoption_rate};
      spec.drops_per_point = config.drops;
    }
    const SweepTable table =
        Sweep(config.experiment, spec, config.base_seed, exec);
    WriteSweepOutputs(table, dir, flags.trace);
  }
  const double wall = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  WriteFile(dir / "meta.txt", MetaText(command, config, wall));
  out << command << ": wrote " << dir.string() << "\n";
  return kExitOk;
}

}  // namespace

int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err) {
  CLI::App app{"Femtocell offload association and backhaul experiments",
               "offload"};
  app.set_version_flag("--version", std::string(VersionString()));
  app.require_subcommand(1);
  Flags flags;
  const char* commands[][2] = {
      {"run", "Drops at the configured point, with the operator-only reference"},
      {"sweep", "Sweep one variable as configured in [sweep]"},
      {"compare-backhaul", "Cell splitting versus femto offload"},
      {"validate", "Parse and check a configuration, then echo it"}};
  for (const auto& [name, help] : commands) {
    AddFlags(app.add_subcommand(name, help), flags);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << VersionString() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto chosen = app.get_subcommands();
    err << (chosen.empty() ? app.help() : chosen.front()->help());
    return kExitConfigError;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return Execute(command, flags, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << "\n";
    return kExitSolverError;
  } catch (const ModelError& e) {
    err << "model error: " << e.what() << "\n";
    return kExitSolverError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

}  // namespace offload::tools
