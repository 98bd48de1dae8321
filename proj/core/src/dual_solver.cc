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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "offload/errors.h"
#include "offload/recovery.h"
#include "offload/subproblems.h"

namespace offload {
namespace {

constexpr double kZLow = 1e-3;  // grid floor, noise units

RhoCurve CurveOf(const Problem& p, int l) {
  return {p.snr_full(l), p.beta(), p.rho_max()};
}

// Box maxima of the Lagrangian given lambda = A^T mu. Writes the maximizer
// into `theta_star` when non-null.
double DualValue(const Problem& p, std::span<const double> mu_theta,
                 std::span<const double> mu_r, std::span<const double> lambda,
                 std::vector<double>* theta_star) {
  const ThetaLayout& t = p.layout();
  const double rho_max = p.rho_max();
  const double floor = p.rate_floor();
  double value = 0.0;
  for (int k = 0; k < p.num_rows(); ++k) value += mu_theta[k] * p.b()[k];
  auto put = [&](int k, double v) {
    if (theta_star) (*theta_star)[k] = v;
  };
  for (int l = 0; l < p.num_links(); ++l) {
    const double coef = -(lambda[t.r(l)] + mu_r[l]);
    const double hi = p.bandwidth(p.link_bs(l)) * rho_max;
    const double r = coef > 0.0 ? hi : 0.0;
    value += coef * r;
    put(t.r(l), r);
  }
  for (int j = 0; j < p.num_bs(); ++j) {
    const double coef = -(p.price(j) + lambda[t.rbs(j)]);
    const double hi = std::min(p.backhaul_cap(j), p.bandwidth(j) * rho_max);
    const double r = coef > 0.0 ? hi : 0.0;
    value += coef * r;
    put(t.rbs(j), r);
  }
  for (int i = 0; i < p.num_ms(); ++i) {
    double hi = 0.0;
    for (int l = p.ms_link_begin(i); l < p.ms_link_end(i); ++l) {
      hi += p.bandwidth(p.link_bs(l)) * rho_max;
    }
    const double lam = lambda[t.rms(i)];
    double best_r = 0.0;
    double best = std::log(floor);
    if (hi > floor) {
      const double r = lam > 0.0 ? std::clamp(1.0 / lam, floor, hi) : hi;
      const double v = std::log(r) - lam * r;
      if (v > best) {
        best = v;
        best_r = r;
      }
    }
    value += best;
    put(t.rms(i), best_r);
  }
  for (int l = 0; l < p.num_links(); ++l) {
    const RhoCurve curve = CurveOf(p, l);
    const double cap = p.bandwidth(p.link_bs(l));
    const double lw = lambda[t.w(l)];
    const double lz = lambda[t.z(l)];  // <= 0
    const double zmax = p.z_max(l);
    // Linear in w; in z, flat-then-convex plus linear, so the maximum sits
    // at the knee of the rho cap or at zmax.
    double best = -INFINITY, best_w = 0.0, best_z = 0.0;
    for (double z : {0.0, std::min(curve.CapKnee(), zmax), zmax}) {
      const double slope = mu_r[l] * curve(z) - lw;
      const double w = slope > 0.0 ? cap : 0.0;
      const double v = slope * w - lz * z;
      if (v > best) {
        best = v;
        best_w = w;
        best_z = z;
      }
    }
    value += best;
    put(t.w(l), best_w);
    put(t.z(l), best_z);
  }
  return value;
}

void Residuals(const Problem& p, std::span<const double> theta,
               std::vector<double>& g_theta, std::vector<double>& g_r) {
  const ThetaLayout& t = p.layout();
  g_theta.resize(p.num_rows());
  p.ApplyA(theta, g_theta);
  for (int k = 0; k < p.num_rows(); ++k) g_theta[k] -= p.b()[k];
  g_r.resize(p.num_links());
  for (int l = 0; l < p.num_links(); ++l) {
    g_r[l] = theta[t.r(l)] - theta[t.w(l)] * p.Rho(l, theta[t.z(l)]);
  }
}

bool AllFinite(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

[[noreturn]] void FailNonFinite(const Problem& p, int iter,
                                std::span<const double> theta,
                                std::span<const double> mu) {
  const ThetaLayout& t = p.layout();
  std::string dump = "non-finite iterate at iteration " +
                     std::to_string(iter) + ":";
  char buffer[160];
  int shown = 0;
  for (int k = 0; k < t.size() && shown < 8; ++k) {
    if (!std::isfinite(theta[k])) {
      std::snprintf(buffer, sizeof(buffer), " theta[%d]=%g", k, theta[k]);
      dump += buffer;
      ++shown;
    }
  }
  for (size_t k = 0; k < mu.size() && shown < 16; ++k) {
    if (!std::isfinite(mu[k])) {
      std::snprintf(buffer, sizeof(buffer), " mu[%zu]=%g", k, mu[k]);
      dump += buffer;
      ++shown;
    }
  }
  throw SolverError(dump);
}

}  // namespace

void SolverConfig::Validate() const {
  auto require = [](bool ok, const char* message) {
    if (!ok) throw ConfigError(message);
  };
  require(tau > 0, "tau must be > 0");
  require(tau_z >= 0, "tau_z must be >= 0");
  require(step0 > 0, "step0 must be > 0");
  require(max_iters >= 1, "max_iters must be >= 1");
  require(feas_tol > 0, "feas_tol must be > 0");
  require(z_grid >= 2, "z_grid must be >= 2");
  require(golden_iters >= 0, "golden_iters must be >= 0");
  require(dual_bound_iters >= 0, "dual_bound_iters must be >= 0");
  require(recovery_every >= 1, "recovery_every must be >= 1");
}

double DualFunction(const Problem& problem, std::span<const double> mu_theta,
                    std::span<const double> mu_r,
                    std::vector<double>* g_theta, std::vector<double>* g_r) {
  std::vector<double> lambda(problem.layout().size());
  problem.ApplyAT(mu_theta, lambda);
  std::vector<double> star;
  if (g_theta || g_r) star.assign(problem.layout().size(), 0.0);
  const double value =
      DualValue(problem, mu_theta, mu_r, lambda, star.empty() ? nullptr : &star);
  if (!star.empty()) {
    std::vector<double> gt, gr;
    Residuals(problem, star, gt, gr);
    if (g_theta) *g_theta = std::move(gt);
    if (g_r) *g_r = std::move(gr);
  }
  return value;
}

DualAscentResult DualAscent(const Problem& p, const SolverConfig& config,
                            bool record_trace) {
  config.Validate();
  const ThetaLayout& t = p.layout();
  const int n = p.num_links();
  const int rows = p.num_rows();
  const int int0 = p.num_ms() + p.num_bs();
  const int bw0 = int0 + n;

  // Per-row step preconditioner: l1 norm of the normalized row plus one.
  std::vector<double> inv_deg(rows);
  {
    std::vector<double> ones(n, 1.0), row_sum(n);
    p.g().Apply(ones, row_sum);
    for (int i = 0; i < p.num_ms(); ++i) {
      inv_deg[i] = 1.0 / (p.ms_link_end(i) - p.ms_link_begin(i) + 1);
    }
    for (int j = 0; j < p.num_bs(); ++j) {
      const double links = static_cast<double>(p.bs_links(j).size());
      inv_deg[p.num_ms() + j] = 1.0 / (links + 1.0);
      inv_deg[bw0 + j] = 1.0 / std::max(links, 1.0);
    }
    for (int l = 0; l < n; ++l) {
      inv_deg[int0 + l] = p.int_scale(l) / (row_sum[l] + 1.0);
    }
  }

  std::vector<RhoCurve> curves(n);
  std::vector<WzGrid> grids(n);
  for (int l = 0; l < n; ++l) {
    curves[l] = CurveOf(p, l);
    grids[l] = WzGrid(curves[l], std::min(kZLow, p.z_max(l)), p.z_max(l),
                      config.z_grid);
  }

  // Start: equal split per BS, exact interference, consistent rates.
  std::vector<double> theta(t.size(), 0.0);
  {
    std::vector<double> w(n), z(n);
    for (int l = 0; l < n; ++l) {
      const int j = p.link_bs(l);
      w[l] = p.bandwidth(j) / p.bs_links(j).size();
    }
    p.g().Apply(w, z);
    for (int l = 0; l < n; ++l) {
      const double r = w[l] * p.Rho(l, z[l]);
      theta[t.r(l)] = r;
      theta[t.w(l)] = w[l];
      theta[t.z(l)] = z[l];
      theta[t.rbs(p.link_bs(l))] += r;
      theta[t.rms(p.link_ms(l))] += r;
    }
    for (int j = 0; j < p.num_bs(); ++j) {
      theta[t.rbs(j)] = std::min(theta[t.rbs(j)], p.backhaul_cap(j));
    }
  }

  DualAscentResult result;
  DualState& state = result.state;
  state.mu_theta.assign(rows, 0.0);
  state.mu_r.assign(n, 0.0);
  state.lambda.assign(t.size(), 0.0);
  std::vector<double> next(t.size()), g_theta, g_r;
  double best_bound = INFINITY;
  bool have_candidate = false;
  Solution& best = result.multipath;
  auto consider = [&](const std::vector<double>& w) {
    Solution m = RecoverFeasible(p, w);
    Solution s = TruncateSinglePath(m, p);
    Solution& pick = m.net_utility >= s.net_utility ? m : s;
    if (!have_candidate || pick.net_utility > best.net_utility) {
      best = std::move(pick);
      have_candidate = true;
    }
  };
  auto w_of = [&](const std::vector<double>& th) {
    return std::vector<double>(th.begin() + t.w(0), th.begin() + t.w(0) + n);
  };

  consider(w_of(theta));
  std::vector<double> w_avg(n, 0.0);  // step-weighted running mean of w
  double weight = 0.0;

  std::vector<double> history;  // iterate net utility, for termination
  int iter = 0;
  for (iter = 1; iter <= config.max_iters; ++iter) {
    const double step = config.step_rule == StepRule::kDiminishingSqrt
                            ? config.step0 / std::sqrt(static_cast<double>(iter))
                            : config.step0;
    p.ApplyAT(state.mu_theta, state.lambda);
    const std::vector<double>& lam = state.lambda;
    best_bound = std::min(
        best_bound, DualValue(p, state.mu_theta, state.mu_r, lam, nullptr));

    for (int l = 0; l < n; ++l) {
      next[t.r(l)] = SolveLinkRate(theta[t.r(l)],
                                   lam[t.r(l)] + state.mu_r[l], config.tau);
    }
    for (int j = 0; j < p.num_bs(); ++j) {
      next[t.rbs(j)] = SolveBsRate(theta[t.rbs(j)], p.price(j) + lam[t.rbs(j)],
                                   p.backhaul_cap(j), config.tau);
    }
    for (int i = 0; i < p.num_ms(); ++i) {
      next[t.rms(i)] = SolveMsRate(theta[t.rms(i)], lam[t.rms(i)], config.tau);
    }
    WzParams wz;
    wz.tau_w = config.tau;
    wz.tau_z = config.tau_z;
    wz.golden_iters = config.golden_iters;
    for (int l = 0; l < n; ++l) {
      wz.mu_r = state.mu_r[l];
      wz.lambda_w = lam[t.w(l)];
      wz.lambda_z = lam[t.z(l)];
      wz.w_prev = theta[t.w(l)];
      wz.z_prev = theta[t.z(l)];
      wz.w_cap = p.bandwidth(p.link_bs(l));
      const WzResult res = SolveWz(wz, curves[l], grids[l]);
      next[t.w(l)] = res.w;
      next[t.z(l)] = res.z;
    }

    Residuals(p, next, g_theta, g_r);
    for (int k = 0; k < rows; ++k) {
      state.mu_theta[k] =
          std::max(0.0, state.mu_theta[k] + step * g_theta[k] * inv_deg[k]);
    }
    for (int l = 0; l < n; ++l) {
      state.mu_r[l] = std::max(0.0, state.mu_r[l] + step * g_r[l]);
    }
    if (!AllFinite(next) || !AllFinite(state.mu_theta) ||
        !AllFinite(state.mu_r)) {
      FailNonFinite(p, iter, next, state.mu_theta);
    }
    theta.swap(next);
    state.step = step;
    state.iter = iter;

    weight += step;
    for (int l = 0; l < n; ++l) {
      w_avg[l] += step / weight * (theta[t.w(l)] - w_avg[l]);
    }
    if (iter % config.recovery_every == 0) {
      consider(w_of(theta));
      consider(w_avg);
    }

    const double value = p.NetUtility(theta);
    double violation = 0.0;
    for (int k = 0; k < rows; ++k) {
      violation = std::max(violation,
                           g_theta[k] / std::max(1.0, std::abs(p.b()[k])));
    }
    for (int l = 0; l < n; ++l) {
      violation = std::max(violation, g_r[l] / std::max(1.0, theta[t.r(l)]));
    }
    if (record_trace) {
      result.trace.push_back({iter, value, best_bound, violation, step});
    }
    history.push_back(value);
    if (history.size() > 10 && violation <= config.feas_tol) {
      const double before = history[history.size() - 11];
      if (std::abs(value - before) <
          config.feas_tol * std::max(1.0, std::abs(value))) {
        result.converged = true;
        break;
      }
    }
  }
  result.iterations = std::min(iter, config.max_iters);
  consider(w_of(theta));
  consider(w_avg);
  best = ImproveAssociation(best, p);
  state.prox_center = theta;

  // Bound polishing: preconditioned subgradient steps on the dual function
  // with a Polyak step toward the best primal value, once from the final
  // multipliers and once from zero.
  for (int start = 0; start < 2; ++start) {
    std::vector<double> mu = state.mu_theta, mu_r = state.mu_r;
    if (start == 1) {
      std::fill(mu.begin(), mu.end(), 0.0);
      std::fill(mu_r.begin(), mu_r.end(), 0.0);
    }
    std::vector<double> lambda(t.size()), star(t.size());
    const double target = best.net_utility;
    double gamma = 1.0;
    int stall = 0;
    double run_best = INFINITY;
    for (int k = 0; k < config.dual_bound_iters; ++k) {
      p.ApplyAT(mu, lambda);
      const double d = DualValue(p, mu, mu_r, lambda, &star);
      best_bound = std::min(best_bound, d);
      if (d < run_best - 1e-12 * std::max(1.0, std::abs(run_best))) {
        run_best = d;
        stall = 0;
      } else if (++stall >= 10) {
        gamma *= 0.5;
        stall = 0;
      }
      Residuals(p, star, g_theta, g_r);
      double norm = 0.0;
      for (int r = 0; r < rows; ++r) {
        const double gk = (mu[r] > 0.0 || g_theta[r] > 0.0) ? g_theta[r] : 0.0;
        norm += gk * gk * inv_deg[r];
      }
      for (int l = 0; l < n; ++l) {
        const double gk = (mu_r[l] > 0.0 || g_r[l] > 0.0) ? g_r[l] : 0.0;
        norm += gk * gk;
      }
      if (norm <= 0.0 || !(d > target)) break;
      const double alpha = gamma * (d - target) / norm;
      for (int r = 0; r < rows; ++r) {
        mu[r] = std::max(0.0, mu[r] + alpha * g_theta[r] * inv_deg[r]);
      }
      for (int l = 0; l < n; ++l) {
        mu_r[l] = std::max(0.0, mu_r[l] + alpha * g_r[l]);
      }
    }
  }
  result.dual_bound = best_bound;
  return result;
}

}  // namespace offload
