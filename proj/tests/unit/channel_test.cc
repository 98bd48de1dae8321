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

#include <cmath>

#include <gtest/gtest.h>

#include "offload/errors.h"

namespace offload {
namespace {

TEST(PathlossTest, ReferenceDistances) {
  const ChannelParams p;
  EXPECT_NEAR(PathlossDbAtDistance(100.0, 0.0, p), 90.5, 1e-9);
  EXPECT_NEAR(PathlossDbAtDistance(100.0, 20.0, p), 110.5, 1e-9);
  EXPECT_NEAR(PathlossDbAtDistance(1.0, 0.0, p), 15.3, 1e-9);
  // Clamped below one meter.
  EXPECT_NEAR(PathlossDbAtDistance(0.0, 0.0, p), 15.3, 1e-9);
  EXPECT_NEAR(PathlossDbAtDistance(1000.0, 0.0, p), 15.3 + 3 * 37.6, 1e-9);
}

TEST(PathlossTest, UsesWrappedDistanceAndWallLoss) {
  const ChannelParams p;
  const Area area{1000, 1000, true, 0.0};
  BaseStation femto;
  femto.position = {10, 500};
  femto.indoor_wall_loss_db = 20.0;
  const MobileStation ms{0, {910, 500}};
  EXPECT_NEAR(PathlossDb(femto, ms, area, p), 110.5, 1e-9);
}

TEST(AntennaTest, PatternValues) {
  const ChannelParams p;
  EXPECT_DOUBLE_EQ(AntennaGainDb(0.0, 0.0, p), 0.0);
  EXPECT_NEAR(AntennaGainDb(0.0, 70.0, p), -12.0, 1e-12);
  EXPECT_NEAR(AntennaGainDb(120.0, 50.0, p), -12.0, 1e-12);
  EXPECT_NEAR(AntennaGainDb(0.0, 180.0, p), -25.0, 1e-12);
  EXPECT_NEAR(AntennaGainDb(0.0, 35.0, p), -3.0, 1e-12);
  // Wraps across the +-180 seam.
  EXPECT_NEAR(AntennaGainDb(350.0, 5.0, p), -12.0 * (15.0 / 70) * (15.0 / 70),
              1e-12);
  for (double t = -180; t <= 180; t += 7.5) {
    const double g = AntennaGainDb(0.0, t, p);
    EXPECT_NEAR(g, AntennaGainDb(0.0, -t, p), 1e-12);
    EXPECT_LE(g, 0.0);
    EXPECT_GE(g, -25.0);
  }
}

TEST(SpectralEfficiencyTest, CappedShannonWithGapLoss) {
  const ChannelParams p;
  const double beta = std::pow(10.0, -0.3);
  EXPECT_NEAR(SpectralEfficiency(10.0, p), std::log2(1 + beta * 10.0), 1e-12);
  EXPECT_NEAR(SpectralEfficiency(10.0, p), 2.588, 1e-3);
  EXPECT_EQ(SpectralEfficiency(0.0, p), 0.0);
  EXPECT_EQ(SpectralEfficiency(1e9, p), 4.8);
  double prev = -1.0;
  for (double db = -20; db <= 50; db += 0.5) {
    const double s = SpectralEfficiency(std::pow(10.0, db / 10), p);
    EXPECT_GE(s, prev);
    prev = s;
  }
}

TEST(ChannelParamsTest, NoiseAndValidation) {
  ChannelParams p;
  // -174 dBm/Hz + 9 dB in W/Hz.
  EXPECT_NEAR(p.NoiseFloorWPerHz(), std::pow(10.0, (-174.0 + 9 - 30) / 10),
              1e-30);
  EXPECT_EQ(p.ShadowStdDb(BsClass::kOperatorMicro), 10.0);
  EXPECT_EQ(p.ShadowStdDb(BsClass::kThirdPartyFemto), 8.0);
  p.intersite_corr = 1.5;
  EXPECT_THROW(p.Validate(), ConfigError);
}

Scenario ShadowScenario(int num_ms) {
  Scenario s;
  for (int j = 0; j < 4; ++j) {
    BaseStation b;
    b.id = j;
    b.cls = j < 2 ? BsClass::kOperatorMacroSector : BsClass::kOperatorMicro;
    b.site = j < 2 ? 0 : j - 1;
    s.bs.push_back(b);
  }
  for (int i = 0; i < num_ms; ++i) s.ms.push_back({i, {0, 0}});
  return s;
}

TEST(ShadowingTest, CorrelationAndSpread) {
  const ChannelParams p;
  const int n = 40000;
  const ShadowField f = DrawShadowing(ShadowScenario(n), p, 5);
  double s2 = 0, s3 = 0, s23 = 0, m2 = 0, m3 = 0;
  for (int i = 0; i < n; ++i) {
    // Sectors of one site see the same value.
    EXPECT_EQ(f.at(i, 0), f.at(i, 1));
    m2 += f.at(i, 2) / n;
    m3 += f.at(i, 3) / n;
  }
  for (int i = 0; i < n; ++i) {
    const double a = f.at(i, 2) - m2, b = f.at(i, 3) - m3;
    s2 += a * a;
    s3 += b * b;
    s23 += a * b;
  }
  EXPECT_NEAR(std::sqrt(s2 / n), 10.0, 0.2);
  EXPECT_NEAR(std::sqrt(s3 / n), 10.0, 0.2);
  EXPECT_NEAR(s23 / std::sqrt(s2 * s3), 0.5, 0.02);
}

TEST(ShadowingTest, FullCorrelationAndDeterminism) {
  ChannelParams p;
  p.intersite_corr = 1.0;
  const ShadowField f = DrawShadowing(ShadowScenario(50), p, 9);
  const ShadowField g = DrawShadowing(ShadowScenario(50), p, 9);
  for (int i = 0; i < 50; ++i) {
    EXPECT_NEAR(f.at(i, 2), f.at(i, 3), 1e-12);
    EXPECT_EQ(f.at(i, 2), g.at(i, 2));
  }
}

}  // namespace
}  // namespace offload
