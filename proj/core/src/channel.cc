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

#include "offload/channel.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "offload/errors.h"
#include "offload/rng.h"

namespace offload {

double ChannelParams::ShadowStdDb(BsClass c) const {
  switch (c) {
    case BsClass::kOperatorMacroSector:
      return shadow_std_macro_db;
    case BsClass::kOperatorMicro:
      return shadow_std_micro_db;
    case BsClass::kThirdPartyFemto:
      return shadow_std_femto_db;
  }
  return 0.0;
}

double ChannelParams::NoiseFloorWPerHz() const {
  return std::pow(10.0, (noise_psd_dbm_hz + ue_noise_figure_db - 30.0) / 10.0);
}

double ChannelParams::BetaLinear() const {
  return std::pow(10.0, -beta_loss_db / 10.0);
}

void ChannelParams::Validate() const {
  auto require = [](bool ok, const char* message) {
    if (!ok) throw ConfigError(message);
  };
  require(rho_max > 0, "rho_max must be > 0");
  require(intersite_corr >= 0 && intersite_corr <= 1,
          "intersite_corr must lie in [0, 1]");
  require(intrasite_corr >= 0 && intrasite_corr <= 1,
          "intrasite_corr must lie in [0, 1]");
  require(shadow_std_micro_db >= 0 && shadow_std_macro_db >= 0 &&
              shadow_std_femto_db >= 0,
          "shadowing standard deviations must be >= 0");
  require(antenna_theta3db_deg > 0, "antenna_theta3db_deg must be > 0");
  require(antenna_am_db >= 0, "antenna_am_db must be >= 0");
  require(beta_loss_db >= 0, "beta_loss_db must be >= 0");
  require(candidates >= 1, "candidates must be >= 1");
  require(min_distance_m > 0, "min_distance_m must be > 0");
  require(carrier_freq_ghz > 0, "carrier_freq_ghz must be > 0");
}

double PathlossDbAtDistance(double distance_m, double wall_loss_db,
                            const ChannelParams& params) {
  const double d = std::max(distance_m, params.min_distance_m);
  return params.pathloss_a_db + params.pathloss_b_db * std::log10(d) +
         wall_loss_db;
}

double PathlossDb(const BaseStation& tx, const MobileStation& rx,
                  const Area& area, const ChannelParams& params) {
  return PathlossDbAtDistance(area.Distance(tx.position, rx.position),
                              tx.indoor_wall_loss_db, params);
}

double AntennaGainDb(double sector_azimuth_deg, double bearing_deg,
                     const ChannelParams& params) {
  const double theta = WrapDeg(bearing_deg - sector_azimuth_deg);
  const double ratio = theta / params.antenna_theta3db_deg;
  return -std::min(12.0 * ratio * ratio, params.antenna_am_db);
}

ShadowField DrawShadowing(const Scenario& scenario,
                          const ChannelParams& params, uint64_t seed) {
  const int num_ms = static_cast<int>(scenario.ms.size());
  const int num_bs = static_cast<int>(scenario.bs.size());
  ShadowField field(num_ms, num_bs);
  const double a = std::sqrt(params.intersite_corr);
  const double b = std::sqrt(1.0 - params.intersite_corr);
  const double ai = std::sqrt(params.intrasite_corr);
  const double bi = std::sqrt(1.0 - params.intrasite_corr);
  const bool sector_draws = params.intrasite_corr < 1.0;
  for (int i = 0; i < num_ms; ++i) {
    auto rng = MakeStream(seed, Stream::kShadowing, i);
    std::normal_distribution<double> normal;
    const double common = normal(rng);
    int current_site = -1;
    double site_value = 0.0;
    for (int j = 0; j < num_bs; ++j) {
      const BaseStation& bs = scenario.bs[j];
      if (bs.site != current_site) {
        current_site = bs.site;
        site_value = a * common + b * normal(rng);
      }
      double v = site_value;
      if (sector_draws) v = ai * site_value + bi * normal(rng);
      field.at(i, j) = params.ShadowStdDb(bs.cls) * v;
    }
  }
  return field;
}

double SpectralEfficiency(double sinr, const ChannelParams& params) {
  return std::min(std::log2(1.0 + params.BetaLinear() * sinr),
                  params.rho_max);
}

}  // namespace offload
