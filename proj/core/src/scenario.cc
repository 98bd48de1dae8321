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

#include "offload/scenario.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "offload/errors.h"
#include "offload/rng.h"

namespace offload {
namespace {

void Append(std::string* out, const char* format, auto... args) {
  char buffer[256];
  const int n = std::snprintf(buffer, sizeof(buffer), format, args...);
  out->append(buffer, std::min<size_t>(n, sizeof(buffer) - 1));
}

int RoundHalfEven(double x) { return static_cast<int>(std::nearbyint(x)); }

void Require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

std::vector<Position> UniformPositions(int n, const Area& area,
                                       std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ux(0.0, area.width_m);
  std::uniform_real_distribution<double> uy(0.0, area.height_m);
  std::vector<Position> out(n);
  for (Position& p : out) {
    p.x = ux(rng);
    p.y = uy(rng);
  }
  return out;
}

// Ingested sites are centered on the area; shift into [0, w) x [0, h).
std::vector<Position> ToAreaFrame(const std::vector<Position>& local,
                                  const Area& area) {
  std::vector<Position> out;
  out.reserve(local.size());
  for (const Position& p : local) {
    out.push_back({p.x + 0.5 * area.width_m, p.y + 0.5 * area.height_m});
  }
  return out;
}

}  // namespace

const char* BsClassName(BsClass c) {
  switch (c) {
    case BsClass::kOperatorMacroSector:
      return "macro";
    case BsClass::kOperatorMicro:
      return "micro";
    case BsClass::kThirdPartyFemto:
      return "femto";
  }
  return "?";
}

const char* EnvironmentName(Environment e) {
  return e == Environment::kUrban ? "urban" : "suburban";
}

int Scenario::NumOperatorCells() const {
  return static_cast<int>(std::count_if(
      bs.begin(), bs.end(), [](const auto& b) { return IsOperator(b.cls); }));
}

int Scenario::NumFemtoCells() const {
  return static_cast<int>(bs.size()) - NumOperatorCells();
}

std::string Scenario::Serialize() const {
  std::string out;
  Append(&out, "environment %s\n", EnvironmentName(environment));
  Append(&out, "seed %llu\n", static_cast<unsigned long long>(seed));
  Append(&out, "area %.17g %.17g %d %.17g\n", area.width_m, area.height_m,
         area.wrap_around ? 1 : 0, area.shear_m);
  Append(&out, "isd_m %.17g\n", inter_site_distance_m);
  Append(&out, "sites %d\n", num_sites);
  Append(&out, "bs_count %zu\n", bs.size());
  for (const BaseStation& b : bs) {
    Append(&out, "bs %d %s %d %.17g %.17g %.17g %.17g %.17g %.17g %.17g %.17g\n",
           b.id, BsClassName(b.cls), b.site, b.position.x, b.position.y,
           b.sector_azimuth_deg, b.tx_power_dbm, b.bandwidth_hz,
           b.backhaul_cap_bps, b.price_per_mbps, b.indoor_wall_loss_db);
  }
  Append(&out, "ms_count %zu\n", ms.size());
  for (const MobileStation& m : ms) {
    Append(&out, "ms %d %.17g %.17g\n", m.id, m.position.x, m.position.y);
  }
  return out;
}

void ScenarioConfig::Validate() const {
  Require(area_width_m > 0 && area_height_m > 0,
          "area dimensions must be > 0");
  Require(split_factor >= 1.0, "split_factor must be >= 1");
  Require(adoption_rate >= 0.0 && adoption_rate <= 1.0,
          "adoption_rate must lie in [0, 1]");
  Require(ap_count >= 0, "ap_count must be >= 0");
  Require(ue_per_cell >= 1, "ue_per_cell must be >= 1");
  Require(ue_count >= 0, "ue_count must be >= 0");
  Require(bandwidth_hz > 0, "bandwidth must be > 0");
  Require(!femto_backhaul_caps_bps.empty(), "backhaul cap set is empty");
  for (double cap : femto_backhaul_caps_bps) {
    Require(cap > 0 && std::isfinite(cap), "backhaul caps must be finite > 0");
  }
  Require(femto_wall_loss_db >= 0, "femto wall loss must be >= 0");
  Require(femto_price_per_mbps >= 0, "femto price must be >= 0");
  Require(min_isd_m > 0, "min_isd_m must be > 0");
  if (operator_sites) {
    Require(!operator_sites->empty(), "operator site list is empty");
    Require(split_factor == 1.0,
            "split_factor > 1 requires stochastic operator placement");
  } else if (environment == Environment::kUrban) {
    Require(micro_cells >= 1, "micro_cells must be >= 1");
  } else {
    Require(macro_sites >= 1, "macro_sites must be >= 1");
  }
}

int BaseOperatorCells(const ScenarioConfig& config) {
  const int sites = config.operator_sites
                        ? static_cast<int>(config.operator_sites->size())
                        : (config.environment == Environment::kUrban
                               ? config.micro_cells
                               : config.macro_sites);
  return config.environment == Environment::kUrban ? sites : 3 * sites;
}

HexLayout MakeHexLayout(int sites, double width_m, double height_m, bool wrap,
                        double min_isd_m) {
  if (sites < 1) throw ConfigError("hex layout needs at least one site");
  HexLayout layout;
  const double row_pitch_factor = std::sqrt(3.0) / 2.0;
  layout.isd_m =
      std::sqrt(width_m * height_m / (row_pitch_factor * sites));
  if (!(layout.isd_m >= min_isd_m)) {
    throw ConfigError("area too small for requested hex grid: derived ISD " +
                      std::to_string(layout.isd_m) + " m < min_isd_m " +
                      std::to_string(min_isd_m) + " m");
  }
  // Candidate tori: sites = rows * cols, and a shear that keeps the lattice
  // regular across the seam (a half pitch for odd row counts). The torus with
  // the longest shortest period wins, so a site is as far from its own images
  // as possible; ties go to the aspect closest to the requested area.
  const double pitch = layout.isd_m * row_pitch_factor;
  const double target = std::log(width_m / height_m);
  double best_period = -1.0;
  double best_aspect = std::numeric_limits<double>::infinity();
  for (int r = 1; r <= sites; ++r) {
    if (sites % r != 0) continue;
    const int c = sites / r;
    const double w = c * layout.isd_m;
    const double h = r * pitch;
    const double aspect = std::abs(std::log(w / h) - target);
    const int shears = wrap ? c : 1;
    for (int k = 0; k < shears; ++k) {
      const double shear =
          wrap ? (k + 0.5 * (r % 2)) * layout.isd_m : 0.0;
      double period = std::numeric_limits<double>::infinity();
      for (int b = 0; b <= 3; ++b) {
        for (int a = -3 * c - 3; a <= 3 * c + 3; ++a) {
          if (a == 0 && b == 0) continue;
          period = std::min(period, std::hypot(a * w + b * shear, b * h));
        }
      }
      if (!wrap) period = 0.0;
      const double tol = 1e-9 * layout.isd_m;
      if (period > best_period + tol ||
          (period > best_period - tol && aspect < best_aspect - 1e-12)) {
        best_period = period;
        best_aspect = aspect;
        layout.rows = r;
        layout.cols = c;
        layout.area.shear_m = shear;
      }
    }
  }
  layout.area.width_m = layout.cols * layout.isd_m;
  layout.area.height_m = layout.rows * pitch;
  layout.area.wrap_around = wrap;
  for (int row = 0; row < layout.rows; ++row) {
    for (int col = 0; col < layout.cols; ++col) {
      double x = (col + 0.5 + 0.5 * (row % 2)) * layout.isd_m;
      x = std::fmod(x, layout.area.width_m);
      layout.sites.push_back({x, (row + 0.5) * pitch});
    }
  }
  return layout;
}

std::vector<int> SampleAdoptionIndices(int num_aps, double rate,
                                       uint64_t seed) {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw ConfigError("adoption rate must lie in [0, 1]");
  }
  const int k = RoundHalfEven(rate * num_aps);
  std::vector<int> idx(num_aps);
  std::iota(idx.begin(), idx.end(), 0);
  std::mt19937_64 rng(seed);
  for (int i = 0; i < k; ++i) {
    std::uniform_int_distribution<int> pick(i, num_aps - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  idx.resize(k);
  return idx;
}

std::vector<Position> SampleAdoption(const std::vector<Position>& aps,
                                     double rate, uint64_t seed) {
  std::vector<Position> out;
  for (int i :
       SampleAdoptionIndices(static_cast<int>(aps.size()), rate, seed)) {
    out.push_back(aps[i]);
  }
  return out;
}

Scenario GenerateStochastic(const ScenarioConfig& config, uint64_t seed) {
  config.Validate();
  Scenario s;
  s.environment = config.environment;
  s.seed = seed;
  s.area = {config.area_width_m, config.area_height_m, config.wrap_around,
            0.0};

  auto add_bs = [&](BsClass cls, int site, Position p, double azimuth) {
    BaseStation b;
    b.id = static_cast<int>(s.bs.size());
    b.cls = cls;
    b.site = site;
    b.position = p;
    b.sector_azimuth_deg = azimuth;
    b.bandwidth_hz = config.bandwidth_hz;
    switch (cls) {
      case BsClass::kOperatorMacroSector:
        b.tx_power_dbm = config.macro_tx_power_dbm;
        break;
      case BsClass::kOperatorMicro:
        b.tx_power_dbm = config.micro_tx_power_dbm;
        break;
      case BsClass::kThirdPartyFemto:
        b.tx_power_dbm = config.femto_tx_power_dbm;
        b.indoor_wall_loss_db = config.femto_wall_loss_db;
        b.price_per_mbps = config.femto_price_per_mbps;
        break;
    }
    s.bs.push_back(b);
  };

  // Operator cells.
  std::vector<Position> sites;
  if (config.operator_sites) {
    sites = ToAreaFrame(*config.operator_sites, s.area);
  } else if (config.environment == Environment::kUrban) {
    const int n = RoundHalfEven(config.split_factor * config.micro_cells);
    auto rng = MakeStream(seed, Stream::kOperatorSites);
    sites = UniformPositions(n, s.area, rng);
  } else {
    const int n = RoundHalfEven(config.split_factor * config.macro_sites);
    HexLayout hex = MakeHexLayout(n, config.area_width_m, config.area_height_m,
                                  config.wrap_around, config.min_isd_m);
    s.area = hex.area;
    s.inter_site_distance_m = hex.isd_m;
    sites = std::move(hex.sites);
  }
  for (size_t k = 0; k < sites.size(); ++k) {
    const int site = static_cast<int>(k);
    if (config.environment == Environment::kUrban) {
      add_bs(BsClass::kOperatorMicro, site, sites[k], 0.0);
    } else {
      for (double azimuth : {0.0, 120.0, 240.0}) {
        add_bs(BsClass::kOperatorMacroSector, site, sites[k], azimuth);
      }
    }
  }
  s.num_sites = static_cast<int>(sites.size());

  // Femtocells at a sampled subset of AP locations. Each AP carries its own
  // backhaul cap so nested adoption samples keep their caps.
  std::vector<Position> aps;
  if (config.ap_sites) {
    aps = ToAreaFrame(*config.ap_sites, s.area);
  } else {
    auto rng = MakeStream(seed, Stream::kAccessPoints);
    aps = UniformPositions(config.ap_count, s.area, rng);
  }
  std::vector<double> ap_caps(aps.size());
  {
    auto rng = MakeStream(seed, Stream::kBackhaulCaps);
    std::uniform_int_distribution<size_t> pick(
        0, config.femto_backhaul_caps_bps.size() - 1);
    for (double& cap : ap_caps) cap = config.femto_backhaul_caps_bps[pick(rng)];
  }
  const std::vector<int> adopted =
      SampleAdoptionIndices(static_cast<int>(aps.size()), config.adoption_rate,
                            MixSeed(seed, static_cast<uint64_t>(
                                              Stream::kAdoption)));
  for (int a : adopted) {
    add_bs(BsClass::kThirdPartyFemto, s.num_sites, aps[a], 0.0);
    s.bs.back().backhaul_cap_bps = ap_caps[a];
    ++s.num_sites;
  }

  // UEs. The count follows the unsplit operator layout so that splitting
  // adds capacity for the same population.
  const int num_ue = config.ue_count > 0
                         ? config.ue_count
                         : config.ue_per_cell * BaseOperatorCells(config);
  auto rng = MakeStream(seed, Stream::kUserEquipment);
  const std::vector<Position> ue = UniformPositions(num_ue, s.area, rng);
  for (int i = 0; i < num_ue; ++i) s.ms.push_back({i, ue[i]});
  return s;
}

}  // namespace offload
