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

#ifndef OFFLOAD_CHANNEL_H_
#define OFFLOAD_CHANNEL_H_

#include <cstdint>
#include <vector>

#include "offload/scenario.h"

namespace offload {

struct ChannelParams {
  double carrier_freq_ghz = 2.1;  // informational; the model is fitted at 2 GHz
  double pathloss_a_db = 15.3;
  double pathloss_b_db = 37.6;    // per decade of distance in meters
  double shadow_std_micro_db = 10.0;
  double shadow_std_macro_db = 8.0;
  double shadow_std_femto_db = 8.0;
  double intersite_corr = 0.5;
  double intrasite_corr = 1.0;
  double antenna_theta3db_deg = 70.0;
  double antenna_am_db = 25.0;
  double noise_psd_dbm_hz = -174.0;
  double ue_noise_figure_db = 9.0;
  double beta_loss_db = 3.0;
  double rho_max = 4.8;           // bits/s/Hz
  int candidates = 8;             // K strongest cells per MS
  double min_distance_m = 1.0;

  double ShadowStdDb(BsClass c) const;
  // Thermal noise plus UE noise figure, W/Hz.
  double NoiseFloorWPerHz() const;
  double BetaLinear() const;  // 10^(-beta/10)
  void Validate() const;      // throws ConfigError
};

double PathlossDbAtDistance(double distance_m, double wall_loss_db,
                            const ChannelParams& params);
// Torus distance, clamped below at min_distance_m, plus indoor wall loss.
double PathlossDb(const BaseStation& tx, const MobileStation& rx,
                  const Area& area, const ChannelParams& params);

// -min(12 (theta/theta3db)^2, Am) with theta the wrapped offset between
// bearing and boresight. Omni cells should not call this.
double AntennaGainDb(double sector_azimuth_deg, double bearing_deg,
                     const ChannelParams& params);

// Shadowing in dB for every (MS, BS) pair, row-major by MS.
class ShadowField {
 public:
  ShadowField(int num_ms, int num_bs)
      : num_bs_(num_bs), db_(static_cast<size_t>(num_ms) * num_bs, 0.0) {}
  double at(int ms, int bs) const { return db_[Index(ms, bs)]; }
  double& at(int ms, int bs) { return db_[Index(ms, bs)]; }
  int num_bs() const { return num_bs_; }

 private:
  size_t Index(int ms, int bs) const {
    return static_cast<size_t>(ms) * num_bs_ + bs;
  }
  int num_bs_;
  std::vector<double> db_;
};

// Per MS: a common normal draw c, then per site e_s, site value
// sqrt(rho) c + sqrt(1 - rho) e_s with rho = intersite_corr. Sectors of a
// site mix the site value with their own draw by intrasite_corr (shared
// outright at 1). Scaled by the class standard deviation. Each MS has its own
// substream; sites are drawn in BS order, so operator draws do not depend on
// how many femtocells exist.
ShadowField DrawShadowing(const Scenario& scenario,
                          const ChannelParams& params, uint64_t seed);

// min(log2(1 + 10^(-beta/10) sinr), rho_max), sinr linear.
double SpectralEfficiency(double sinr, const ChannelParams& params);

}  // namespace offload

#endif  // OFFLOAD_CHANNEL_H_
