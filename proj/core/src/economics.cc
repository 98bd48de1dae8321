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

#include "offload/economics.h"

#include <algorithm>
#include <cmath>

#include "offload/errors.h"

namespace offload {

void EconomicsModel::Validate() const {
  if (!(price_femto >= 0.0)) throw ConfigError("price_femto must be >= 0");
  if (!(rate_floor_bps > 0.0) || !std::isfinite(rate_floor_bps)) {
    throw ConfigError("rate_floor_bps must be finite and > 0");
  }
}

double Utility(std::span<const double> ms_rates_bps,
               const EconomicsModel& model) {
  const double floor = model.rate_floor_mbps();
  double u = 0.0;
  for (double r : ms_rates_bps) u += std::log(std::max(r * 1e-6, floor));
  return u;
}

double Cost(std::span<const double> bs_rates_bps, const Scenario& scenario,
            const EconomicsModel& model) {
  double c = 0.0;
  for (size_t j = 0; j < bs_rates_bps.size(); ++j) {
    if (IsOperator(scenario.bs[j].cls) || bs_rates_bps[j] == 0.0) continue;
    c += model.price_femto * bs_rates_bps[j] * 1e-6;
  }
  return c;
}

double NetUtility(std::span<const double> ms_rates_bps,
                  std::span<const double> bs_rates_bps,
                  const Scenario& scenario, const EconomicsModel& model) {
  return Utility(ms_rates_bps, model) -
         Cost(bs_rates_bps, scenario, model);
}

}  // namespace offload
