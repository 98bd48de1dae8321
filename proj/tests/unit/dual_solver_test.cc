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

#include "offload/dual_solver.h"

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "instances.h"
#include "offload/errors.h"
#include "offload/experiments.h"

namespace offload {
namespace {

TEST(DualAscentTest, SingleLinkReachesFullRate) {
  ExperimentConfig c = testing::ToyConfig(0.0);
  c.scenario.adoption_rate = 0.0;
  c.scenario.ue_count = 1;
  const auto inst = testing::BuildInstance(c, 5);
  const Problem& p = inst.problem;
  ASSERT_EQ(p.num_links(), 1);
  const double best = p.bandwidth(0) * p.Rho(0, 0.0);
  const DualAscentResult r = DualAscent(p, SolverConfig{});
  const double rate = std::exp(r.multipath.net_utility);
  EXPECT_NEAR(rate, best, 0.01 * best);
  EXPECT_GE(r.dual_bound, r.multipath.net_utility - 1e-9);
}

TEST(DualAscentTest, BoundsAndMultipliers) {
  for (uint64_t seed = 1; seed <= 4; ++seed) {
    const auto inst =
        testing::BuildInstance(testing::SmallUrbanConfig(0.3), seed);
    const DualAscentResult r = DualAscent(inst.problem, SolverConfig{}, true);
    EXPECT_GE(r.dual_bound, r.multipath.net_utility - 1e-9);
    EXPECT_LE(r.multipath.feasibility.max_violation, 1e-9);
    for (double m : r.state.mu_theta) EXPECT_GE(m, 0.0);
    for (double m : r.state.mu_r) EXPECT_GE(m, 0.0);
    ASSERT_FALSE(r.trace.empty());
    for (size_t k = 1; k < r.trace.size(); ++k) {
      EXPECT_LE(r.trace[k].dual_bound, r.trace[k - 1].dual_bound);
    }
  }
}

TEST(DualAscentTest, DualFunctionBoundsTheExhaustiveOptimum) {
  std::mt19937_64 rng(6);
  std::exponential_distribution<double> e(1.0);
  for (double price : {0.0, 0.5}) {
    const auto inst = testing::BuildInstance(testing::ToyConfig(price), 78);
    const Problem& p = inst.problem;
    const double opt = testing::BruteForceOptimum(p, 8);
    std::vector<double> mu(p.num_rows()), mu_r(p.num_links());
    for (int t = 0; t < 50; ++t) {
      for (double& v : mu) v = t == 0 ? 0.0 : e(rng);
      for (double& v : mu_r) v = t == 0 ? 0.0 : e(rng);
      EXPECT_GE(DualFunction(p, mu, mu_r), opt - 1e-9);
    }
  }
}

TEST(DualAscentTest, FemtoUseFallsWithPrice) {
  double prev = INFINITY;
  for (double price : {0.0, 0.1, 0.5, 1.0, 5.0, 50.0}) {
    double used = 0.0;
    for (uint64_t seed = 1; seed <= 3; ++seed) {
      used += RunDrop(testing::SmallUrbanConfig(price), seed)
                  .femto_backhaul_used_bps;
    }
    EXPECT_LE(used, prev * 1.02 + 1.0) << "price " << price;
    prev = used;
  }
}

TEST(DualAscentTest, ExcludingPriceMatchesOperatorOnly) {
  ExperimentConfig with = testing::SmallUrbanConfig(1e4);
  ExperimentConfig without = testing::SmallUrbanConfig(0.0);
  without.scenario.adoption_rate = 0.0;
  for (uint64_t seed = 1; seed <= 3; ++seed) {
    const DropResult a = RunDrop(with, seed), b = RunDrop(without, seed);
    EXPECT_EQ(a.femto_backhaul_used_bps, 0.0);
    EXPECT_GT(a.num_femto, 0);
    EXPECT_EQ(a.per_ms_rate_bps, b.per_ms_rate_bps);
  }
}

TEST(SolverConfigTest, Validate) {
  SolverConfig c;
  c.max_iters = 0;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = {};
  c.step0 = -1.0;
  EXPECT_THROW(c.Validate(), ConfigError);
}

}  // namespace
}  // namespace offload
