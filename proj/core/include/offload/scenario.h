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

#ifndef OFFLOAD_SCENARIO_H_
#define OFFLOAD_SCENARIO_H_

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "offload/geometry.h"

namespace offload {

enum class BsClass { kOperatorMacroSector, kOperatorMicro, kThirdPartyFemto };
enum class Environment { kUrban, kSuburban };

inline bool IsOperator(BsClass c) { return c != BsClass::kThirdPartyFemto; }
const char* BsClassName(BsClass c);
const char* EnvironmentName(Environment e);

struct BaseStation {
  int id = 0;
  BsClass cls = BsClass::kOperatorMicro;
  // Physical site. Sectors of one macro site share it; every other cell has
  // its own.
  int site = 0;
  Position position;
  double sector_azimuth_deg = 0.0;  // macro sectors only
  double tx_power_dbm = 30.0;
  double bandwidth_hz = 10e6;
  double backhaul_cap_bps = INFINITY;
  double price_per_mbps = 0.0;
  double indoor_wall_loss_db = 0.0;
};

struct MobileStation {
  int id = 0;
  Position position;
};

// One drop. Base stations are ordered operator cells first (macro sectors of
// a site are contiguous), then femtocells.
struct Scenario {
  Environment environment = Environment::kUrban;
  Area area;
  uint64_t seed = 0;
  double inter_site_distance_m = 0.0;  // hexagonal layouts only
  int num_sites = 0;
  std::vector<BaseStation> bs;
  std::vector<MobileStation> ms;

  int NumOperatorCells() const;
  int NumFemtoCells() const;

  // Text dump, one record per line, fixed key order:
  //   environment, seed, area (width height wrap shear), isd_m, sites,
  //   bs_count then "bs id class site x y azimuth power_dbm bandwidth_hz
  //   cap_bps price wall_db" per base station, ms_count then "ms id x y".
  // Floats use 17 significant digits so the dump is lossless.
  std::string Serialize() const;
};

struct ScenarioConfig {
  Environment environment = Environment::kUrban;
  double area_width_m = 1000.0;
  double area_height_m = 1000.0;
  bool wrap_around = true;
  int micro_cells = 17;         // urban
  int macro_sites = 3;          // suburban, three sectors each
  double split_factor = 1.0;    // operator density multiplier
  int ap_count = 36100;         // WiFi APs a femto can be co-located with
  double adoption_rate = 0.05;
  int ue_per_cell = 25;
  int ue_count = 0;             // when > 0, overrides ue_per_cell
  double micro_tx_power_dbm = 30.0;
  double macro_tx_power_dbm = 46.0;
  double femto_tx_power_dbm = 20.0;
  double bandwidth_hz = 10e6;
  std::vector<double> femto_backhaul_caps_bps = {10e6, 20e6, 30e6, 40e6,
                                                 50e6};
  double femto_wall_loss_db = 20.0;
  double femto_price_per_mbps = 0.0;
  double min_isd_m = 50.0;
  // Ingested real-world sites in local meters (origin at the area center).
  // When set they replace the stochastic operator / AP placement.
  std::optional<std::vector<Position>> operator_sites;
  std::optional<std::vector<Position>> ap_sites;

  // Throws ConfigError when a value is out of range.
  void Validate() const;
};

// Number of operator cells before splitting; UE count is tied to it.
int BaseOperatorCells(const ScenarioConfig& config);

Scenario GenerateStochastic(const ScenarioConfig& config, uint64_t seed);

// Uniform sample without replacement of round-half-even(rate * |aps|)
// indices. The selection is a prefix of one seeded shuffle, so the sample at
// a lower rate is contained in the sample at a higher rate.
std::vector<int> SampleAdoptionIndices(int num_aps, double rate, uint64_t seed);
std::vector<Position> SampleAdoption(const std::vector<Position>& aps,
                                     double rate, uint64_t seed);

// Hexagonal torus for `sites` sites in roughly the given area.
struct HexLayout {
  double isd_m = 0.0;
  int rows = 0;
  int cols = 0;
  Area area;
  std::vector<Position> sites;
};
HexLayout MakeHexLayout(int sites, double width_m, double height_m, bool wrap,
                        double min_isd_m);

}  // namespace offload

#endif  // OFFLOAD_SCENARIO_H_
