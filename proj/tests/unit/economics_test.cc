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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "offload/errors.h"

namespace offload {
namespace {

Scenario TwoCells() {
  Scenario s;
  BaseStation op, femto;
  op.cls = BsClass::kOperatorMicro;
  femto.cls = BsClass::kThirdPartyFemto;
  femto.id = 1;
  s.bs = {op, femto};
  return s;
}

TEST(EconomicsTest, UtilityInMbpsWithFloor) {
  const EconomicsModel m;
  const std::vector<double> rates = {1e6, 2e6, 0.0};
  EXPECT_NEAR(Utility(rates, m), std::log(1.0) + std::log(2.0) + std::log(1e-3),
              1e-12);
}

TEST(EconomicsTest, CostChargesFemtoOnly) {
  EconomicsModel m;
  m.price_femto = 0.5;
  const Scenario s = TwoCells();
  const std::vector<double> bs = {30e6, 4e6};
  EXPECT_NEAR(Cost(bs, s, m), 2.0, 1e-12);
  const std::vector<double> ms = {std::exp(1.0) * 1e6, 1e6};
  EXPECT_NEAR(NetUtility(ms, bs, s, m), 1.0 - 2.0, 1e-12);
}

TEST(EconomicsTest, InfinitePrice) {
  EconomicsModel m;
  m.price_femto = INFINITY;
  const Scenario s = TwoCells();
  EXPECT_EQ(Cost(std::vector<double>{5e6, 0.0}, s, m), 0.0);
  EXPECT_TRUE(std::isinf(Cost(std::vector<double>{5e6, 1.0}, s, m)));
  EXPECT_TRUE(m.FemtoExcluded());
}

TEST(EconomicsTest, ExclusionThreshold) {
  EconomicsModel m;
  m.price_femto = 999.0;
  EXPECT_FALSE(m.FemtoExcluded());
  m.price_femto = 1000.0;
  EXPECT_TRUE(m.FemtoExcluded());
}

TEST(EconomicsTest, UtilityIsLogOfGeometricMean) {
  const EconomicsModel m;
  const std::vector<double> rates = {0.5e6, 3e6, 7e6, 11e6};
  double prod = 1.0;
  for (double r : rates) prod *= r * 1e-6;
  const double geo = std::pow(prod, 1.0 / rates.size());
  EXPECT_NEAR(std::exp(Utility(rates, m) / rates.size()), geo, 1e-12);
}

TEST(EconomicsTest, Validate) {
  EconomicsModel m;
  m.price_femto = -1.0;
  EXPECT_THROW(m.Validate(), ConfigError);
  m = {};
  m.rate_floor_bps = 0.0;
  EXPECT_THROW(m.Validate(), ConfigError);
}

}  // namespace
}  // namespace offload
