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

#ifndef OFFLOAD_ECONOMICS_H_
#define OFFLOAD_ECONOMICS_H_

#include <span>

#include "offload/scenario.h"

namespace offload {

enum class UtilityKind { kProportionalFair };

struct EconomicsModel {
  UtilityKind utility = UtilityKind::kProportionalFair;
  // Utility units per Mbps of femto backhaul. +infinity means femtocells are
  // never used.
  double price_femto = 0.0;
  double rate_floor_bps = 1e3;

  double rate_floor_mbps() const { return rate_floor_bps * 1e-6; }
  // A femto Mbps can add at most 1/floor utility, so at or above that price
  // femto links are dominated and dropped from the candidate sets.
  bool FemtoExcluded() const { return price_femto * rate_floor_mbps() >= 1.0; }
  void Validate() const;  // throws ConfigError
};

// sum_i log(max(r_i, floor)) with rates converted to Mbps.
double Utility(std::span<const double> ms_rates_bps,
               const EconomicsModel& model);

// sum over femtocells of p * rate (Mbps). Infinite price with zero load
// costs nothing; with positive load it costs +infinity.
double Cost(std::span<const double> bs_rates_bps, const Scenario& scenario,
            const EconomicsModel& model);

double NetUtility(std::span<const double> ms_rates_bps,
                  std::span<const double> bs_rates_bps,
                  const Scenario& scenario, const EconomicsModel& model);

}  // namespace offload

#endif  // OFFLOAD_ECONOMICS_H_
