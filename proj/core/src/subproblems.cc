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

#include "offload/subproblems.h"

#include <algorithm>
#include <cmath>

namespace offload {

double SolveLinkRate(double r_prev, double price, double tau) {
  return std::max(0.0, r_prev - price / tau);
}

double SolveBsRate(double r_prev, double price, double cap, double tau) {
  return std::clamp(r_prev - price / tau, 0.0, cap);
}

double SolveMsRate(double r_prev, double lambda, double tau) {
  // Root of tau r^2 + b r - 1 with b = lambda - tau r_prev, written to avoid
  // cancellation when b > 0.
  const double b = lambda - tau * r_prev;
  const double disc = std::sqrt(b * b + 4.0 * tau);
  return b > 0.0 ? 2.0 / (b + disc) : (disc - b) / (2.0 * tau);
}

double RhoCurve::operator()(double z) const {
  return std::min(std::log2(1.0 + beta * snr / (1.0 + z)), rho_max);
}

double RhoCurve::CapKnee() const {
  return std::max(0.0, beta * snr / (std::exp2(rho_max) - 1.0) - 1.0);
}

WzGrid::WzGrid(const RhoCurve& curve, double z_lo, double z_hi, int points) {
  if (!(z_hi > z_lo) || points < 2) {
    z = {z_hi};
  } else {
    z.resize(points);
    const double ratio = std::log(z_hi / z_lo);
    for (int k = 0; k < points; ++k) {
      z[k] = z_lo * std::exp(ratio * k / (points - 1));
    }
    z.back() = z_hi;
  }
  for (double v : z) {
    rho.push_back(curve(v));
    zeta.push_back(std::log1p(v));
  }
}

double WzObjective(const WzParams& p, const RhoCurve& curve, double w,
                   double z) {
  const double dz = std::log1p(z) - std::log1p(p.z_prev);
  return p.mu_r * w * curve(z) - p.lambda_w * w - p.lambda_z * z -
         0.5 * p.tau_w * (w - p.w_prev) * (w - p.w_prev) -
         0.5 * p.tau_z * dz * dz;
}

namespace {

struct Eval {
  double w;
  double value;
};

inline Eval Inner(const WzParams& p, double z, double rho, double zeta,
                  double zeta_prev) {
  const double w = std::clamp(
      p.w_prev + (p.mu_r * rho - p.lambda_w) / p.tau_w, 0.0, p.w_cap);
  const double dz = zeta - zeta_prev;
  const double value = p.mu_r * w * rho - p.lambda_w * w - p.lambda_z * z -
                       0.5 * p.tau_w * (w - p.w_prev) * (w - p.w_prev) -
                       0.5 * p.tau_z * dz * dz;
  return {w, value};
}

}  // namespace

WzResult SolveWz(const WzParams& p, const RhoCurve& curve,
                 const WzGrid& grid) {
  const double zeta_prev = std::log1p(p.z_prev);
  const int n = static_cast<int>(grid.z.size());
  int best_k = 0;
  Eval best = Inner(p, grid.z[0], grid.rho[0], grid.zeta[0], zeta_prev);
  for (int k = 1; k < n; ++k) {
    const Eval e = Inner(p, grid.z[k], grid.rho[k], grid.zeta[k], zeta_prev);
    if (e.value > best.value) {
      best = e;
      best_k = k;
    }
  }
  WzResult out{best.w, grid.z[best_k], best.value};
  auto at = [&](double z) {
    z = std::clamp(z, grid.z.front(), grid.z.back());
    return Inner(p, z, curve(z), std::log1p(z), zeta_prev);
  };
  auto offer = [&](double z) {
    z = std::clamp(z, grid.z.front(), grid.z.back());
    const Eval e = at(z);
    if (e.value > out.objective) out = {e.w, z, e.value};
  };
  if (n == 1) return out;

  const double z_prev = std::clamp(p.z_prev, grid.z.front(), grid.z.back());
  offer(z_prev);

  // Golden section on log z across the two cells around the best grid point.
  double lo = std::log(grid.z[std::max(best_k - 1, 0)]);
  double hi = std::log(grid.z[std::min(best_k + 1, n - 1)]);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = hi - g * (hi - lo);
  double b = lo + g * (hi - lo);
  double fa = at(std::exp(a)).value;
  double fb = at(std::exp(b)).value;
  for (int it = 0; it < p.golden_iters; ++it) {
    if (fa >= fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - g * (hi - lo);
      fa = at(std::exp(a)).value;
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + g * (hi - lo);
      fb = at(std::exp(b)).value;
    }
  }
  offer(std::exp(fa >= fb ? a : b));
  return out;
}

}  // namespace offload
