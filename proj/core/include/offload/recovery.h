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

#ifndef OFFLOAD_RECOVERY_H_
#define OFFLOAD_RECOVERY_H_

#include <span>
#include <vector>

#include "offload/problem.h"

namespace offload {

// Largest allocation x <= c (elementwise) with sum x <= cap that cuts the
// biggest entries first: x_k = min(c_k, level).
void WaterFill(std::span<double> c, double cap);

// Feasible point built around a bandwidth vector:
//   1. clip w at 0 and scale every overloaded BS back to W_j;
//   2. z = G w, r = w rho(z);
//   3. water-fill each capped BS down to its backhaul cap;
//   4. per MS, cut its femto rate to the best of {all, none, the level where
//      the marginal utility equals the price};
//   5. drop bandwidth on links left with zero rate and repeat from 2 (at most
//      10 rounds).
// The result satisfies every constraint with z = G w exactly.
Solution RecoverFeasible(const Problem& problem, std::span<const double> w);

// Single-path solution: each MS keeps its highest-rate link (ties to the
// lower BS id); each BS spreads the bandwidth it loses over its retained
// links in proportion to their current share; then RecoverFeasible.
Solution TruncateSinglePath(const Solution& multipath, const Problem& problem);

// Greedy single-path local search. Each MS in turn moves to the candidate
// link that most improves net utility, where every serving BS spends its
// whole band split equally among its MSs (the proportional-fair optimum for
// a fixed association). Interference follows the set of serving BSs exactly.
// Returns the better of `start` and the improved point.
Solution ImproveAssociation(const Solution& start, const Problem& problem,
                            int max_passes = 20);

}  // namespace offload

#endif  // OFFLOAD_RECOVERY_H_
