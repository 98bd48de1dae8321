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

#ifndef OFFLOAD_DUAL_SOLVER_H_
#define OFFLOAD_DUAL_SOLVER_H_

#include <span>
#include <vector>

#include "offload/problem.h"

namespace offload {

enum class StepRule { kDiminishingSqrt, kConstant };

struct SolverConfig {
  double tau = 1.0;     // prox weight on rates and bandwidth
  double tau_z = 1.0;   // prox weight on log(1 + z)
  double step0 = 1.0;
  StepRule step_rule = StepRule::kDiminishingSqrt;
  int max_iters = 300;
  double feas_tol = 1e-3;
  int z_grid = 64;
  int golden_iters = 20;
  int dual_bound_iters = 200;
  // Build a feasible candidate (and its truncation) every this many
  // iterations.
  int recovery_every = 10;

  void Validate() const;  // throws ConfigError
};

struct DualState {
  std::vector<double> mu_theta;     // one per row of A, >= 0
  std::vector<double> mu_r;         // one per link, >= 0
  std::vector<double> lambda;       // A^T mu_theta, laid out like theta
  std::vector<double> prox_center;  // previous theta iterate
  double step = 0.0;
  int iter = 0;
};

struct TraceRow {
  int iter = 0;
  double net_utility = 0.0;  // of the (infeasible) iterate
  double dual_bound = 0.0;   // best so far
  double max_violation = 0.0;
  double step = 0.0;
};

struct DualAscentResult {
  // Best feasible candidate seen; may already be single-path.
  Solution multipath;
  DualState state;
  double dual_bound = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<TraceRow> trace;  // filled when requested
};

// Exact dual function: maximum of the Lagrangian over the box
//   0 <= r_ij <= W_j rho_max, 0 <= rBS_j <= min(cap_j, W_j rho_max),
//   0 <= rMS_i <= sum_j W_j rho_max, 0 <= w_ij <= W_j, 0 <= z_ij <= zmax_ij,
// which contains an optimal point of the program. Optionally returns the
// constraint values at the maximizer (a subgradient of -D).
double DualFunction(const Problem& problem, std::span<const double> mu_theta,
                    std::span<const double> mu_r,
                    std::vector<double>* g_theta = nullptr,
                    std::vector<double>* g_r = nullptr);

DualAscentResult DualAscent(const Problem& problem, const SolverConfig& config,
                            bool record_trace = false);

}  // namespace offload

#endif  // OFFLOAD_DUAL_SOLVER_H_
