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

#ifndef OFFLOAD_SUBPROBLEMS_H_
#define OFFLOAD_SUBPROBLEMS_H_

#include <vector>

namespace offload {

// Closed-form minimizers of the separable prox-Lagrangian pieces. `price` is
// the total linear coefficient on the variable.

// argmin_{r >= 0} price r + (tau/2)(r - r_prev)^2.
double SolveLinkRate(double r_prev, double price, double tau);

// argmin_{0 <= r <= cap} price r + (tau/2)(r - r_prev)^2.
double SolveBsRate(double r_prev, double price, double cap, double tau);

// argmax_{r > 0} log r - (tau/2)(r - r_prev)^2 - lambda r: the positive root
// of tau r^2 + (lambda - tau r_prev) r - 1 = 0.
double SolveMsRate(double r_prev, double lambda, double tau);

// rho(z) = min(log2(1 + beta snr / (1 + z)), rho_max), z in noise units.
struct RhoCurve {
  double snr = 1.0;
  double beta = 0.5;
  double rho_max = 4.8;

  double operator()(double z) const;
  // Largest z at which the cap still binds (0 if it never does).
  double CapKnee() const;
};

// Logarithmic z grid of one link with rho and log(1 + z) cached.
struct WzGrid {
  std::vector<double> z;
  std::vector<double> rho;
  std::vector<double> zeta;  // log(1 + z)

  WzGrid() = default;
  WzGrid(const RhoCurve& curve, double z_lo, double z_hi, int points);
};

// maximize mu_r w rho(z) - lambda_w w - lambda_z z
//          - (tau_w/2)(w - w_prev)^2 - (tau_z/2)(log(1+z) - log(1+z_prev))^2
// over 0 <= w <= w_cap, z in the grid span. The z prox acts on log(1 + z)
// because z spans many decades.
struct WzParams {
  double mu_r = 0.0;
  double lambda_w = 0.0;
  double lambda_z = 0.0;
  double w_prev = 0.0;
  double z_prev = 0.0;
  double w_cap = 1.0;
  double tau_w = 1.0;
  double tau_z = 1.0;
  int golden_iters = 20;
};

struct WzResult {
  double w = 0.0;
  double z = 0.0;
  double objective = 0.0;
};

double WzObjective(const WzParams& p, const RhoCurve& curve, double w,
                   double z);

// Grid search over z with w in closed form, then golden-section refinement
// inside the neighbouring grid cells of the best point. The previous z
// (clamped to the span) is always a candidate.
WzResult SolveWz(const WzParams& p, const RhoCurve& curve, const WzGrid& grid);

}  // namespace offload

#endif  // OFFLOAD_SUBPROBLEMS_H_
