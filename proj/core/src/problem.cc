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

#include "offload/problem.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "offload/errors.h"

namespace offload {

const char* RowFamilyName(RowFamily f) {
  switch (f) {
    case RowFamily::kMsRate:
      return "ms_rate";
    case RowFamily::kBsRate:
      return "bs_rate";
    case RowFamily::kInterference:
      return "interference";
    case RowFamily::kBandwidth:
      return "bandwidth";
    case RowFamily::kRate:
      return "rate";
    case RowFamily::kBound:
      return "bound";
  }
  return "?";
}

RowFamily Problem::family(int row) const {
  if (row < num_ms()) return RowFamily::kMsRate;
  row -= num_ms();
  if (row < num_bs()) return RowFamily::kBsRate;
  row -= num_bs();
  if (row < num_links()) return RowFamily::kInterference;
  row -= num_links();
  if (row < num_bs()) return RowFamily::kBandwidth;
  row -= num_bs();
  if (row < num_links()) return RowFamily::kRate;
  return RowFamily::kBound;
}

double Problem::Rho(int l, double z) const {
  return std::min(std::log2(1.0 + beta_ * snr_[l] / (1.0 + z)), rho_max_);
}

void Problem::ApplyA(std::span<const double> theta,
                     std::span<double> out) const {
  const ThetaLayout& t = layout_;
  const int n = num_links();
  std::fill(out.begin(), out.end(), 0.0);
  double* ms_row = out.data();
  double* bs_row = ms_row + num_ms();
  double* int_row = bs_row + num_bs();
  double* bw_row = int_row + n;
  for (int i = 0; i < num_ms(); ++i) ms_row[i] = theta[t.rms(i)];
  for (int j = 0; j < num_bs(); ++j) bs_row[j] = -theta[t.rbs(j)];
  for (int l = 0; l < n; ++l) {
    ms_row[link_ms_[l]] -= theta[t.r(l)];
    bs_row[link_bs_[l]] += theta[t.r(l)];
    bw_row[link_bs_[l]] += theta[t.w(l)];
  }
  g_.Apply(theta.subspan(t.w(0), n), std::span<double>(int_row, n));
  for (int l = 0; l < n; ++l) {
    int_row[l] = (int_row[l] - theta[t.z(l)]) / int_scale_[l];
  }
}

void Problem::ApplyAT(std::span<const double> mu,
                      std::span<double> out) const {
  const ThetaLayout& t = layout_;
  const int n = num_links();
  std::fill(out.begin(), out.end(), 0.0);
  const double* ms_row = mu.data();
  const double* bs_row = ms_row + num_ms();
  const double* int_row = bs_row + num_bs();
  const double* bw_row = int_row + n;
  std::vector<double> scaled(n);
  for (int l = 0; l < n; ++l) scaled[l] = int_row[l] / int_scale_[l];
  g_.ApplyTranspose(scaled, out.subspan(t.w(0), n));
  for (int l = 0; l < n; ++l) {
    out[t.r(l)] = bs_row[link_bs_[l]] - ms_row[link_ms_[l]];
    out[t.w(l)] += bw_row[link_bs_[l]];
    out[t.z(l)] = -scaled[l];
  }
  for (int j = 0; j < num_bs(); ++j) out[t.rbs(j)] = -bs_row[j];
  for (int i = 0; i < num_ms(); ++i) out[t.rms(i)] = ms_row[i];
}

Eigen::SparseMatrix<double, Eigen::RowMajor> Problem::MatrixA() const {
  const ThetaLayout& t = layout_;
  const int n = num_links();
  const int int0 = num_ms() + num_bs();
  const int bw0 = int0 + n;
  std::vector<Eigen::Triplet<double>> e;
  for (int i = 0; i < num_ms(); ++i) e.emplace_back(i, t.rms(i), 1.0);
  for (int j = 0; j < num_bs(); ++j) {
    e.emplace_back(num_ms() + j, t.rbs(j), -1.0);
  }
  for (int l = 0; l < n; ++l) {
    e.emplace_back(link_ms_[l], t.r(l), -1.0);
    e.emplace_back(num_ms() + link_bs_[l], t.r(l), 1.0);
    e.emplace_back(bw0 + link_bs_[l], t.w(l), 1.0);
    e.emplace_back(int0 + l, t.z(l), -1.0 / int_scale_[l]);
  }
  const auto g = g_.ToSparse();
  for (int l = 0; l < g.outerSize(); ++l) {
    for (decltype(g)::InnerIterator it(g, l); it; ++it) {
      e.emplace_back(int0 + l, t.w(static_cast<int>(it.col())),
                     it.value() / int_scale_[l]);
    }
  }
  Eigen::SparseMatrix<double, Eigen::RowMajor> a(num_rows(), t.size());
  a.setFromTriplets(e.begin(), e.end());
  return a;
}

FeasibilityReport Problem::Feasibility(std::span<const double> theta) const {
  const ThetaLayout& t = layout_;
  const int n = num_links();
  std::vector<double> ax(num_rows());
  ApplyA(theta, ax);
  // Magnitude of the terms of each row, for the relative measure.
  std::vector<double> abs_theta(theta.size());
  for (size_t k = 0; k < theta.size(); ++k) abs_theta[k] = std::abs(theta[k]);
  std::vector<double> mag(num_rows(), 0.0);
  const int int0 = num_ms() + num_bs();
  const int bw0 = int0 + n;
  for (int i = 0; i < num_ms(); ++i) mag[i] = abs_theta[t.rms(i)];
  for (int j = 0; j < num_bs(); ++j) mag[num_ms() + j] = abs_theta[t.rbs(j)];
  std::vector<double> gw(n);
  g_.Apply(std::span<const double>(abs_theta).subspan(t.w(0), n), gw);
  for (int l = 0; l < n; ++l) {
    mag[link_ms_[l]] += abs_theta[t.r(l)];
    mag[num_ms() + link_bs_[l]] += abs_theta[t.r(l)];
    mag[bw0 + link_bs_[l]] += abs_theta[t.w(l)];
    mag[int0 + l] = (gw[l] + abs_theta[t.z(l)]) / int_scale_[l];
  }
  FeasibilityReport report;
  auto consider = [&](int row, double excess, double scale) {
    const double v = std::max(0.0, excess) / std::max(1.0, scale);
    if (v > report.max_violation || std::isnan(v)) {
      report.max_violation = v;
      report.row = row;
      report.family = family(row);
    }
  };
  for (int row = 0; row < num_rows(); ++row) {
    consider(row, ax[row] - b_[row], std::max(mag[row], std::abs(b_[row])));
  }
  for (int l = 0; l < n; ++l) {
    const double cap = theta[t.w(l)] * Rho(l, theta[t.z(l)]);
    consider(num_rows() + l, theta[t.r(l)] - cap,
             std::max(std::abs(theta[t.r(l)]), std::abs(cap)));
  }
  const int bound0 = num_rows() + n;
  for (int k = 0; k < t.size(); ++k) {
    if (theta[k] < 0.0) consider(bound0 + k, -theta[k], 0.0);
  }
  for (int j = 0; j < num_bs(); ++j) {
    if (std::isfinite(cap_[j])) {
      consider(bound0 + t.size() + j, theta[t.rbs(j)] - cap_[j], cap_[j]);
    }
  }
  return report;
}

double Problem::NetUtility(std::span<const double> theta) const {
  double v = 0.0;
  for (int i = 0; i < num_ms(); ++i) {
    v += std::log(std::max(theta[layout_.rms(i)], floor_));
  }
  for (int j = 0; j < num_bs(); ++j) {
    if (is_femto_[j]) v -= price_[j] * theta[layout_.rbs(j)];
  }
  return v;
}

Problem Assemble(const LinkGraph& graph, const Scenario& scenario,
                 const EconomicsModel& economics,
                 const ChannelParams& params) {
  economics.Validate();
  if (graph.num_ms != static_cast<int>(scenario.ms.size()) ||
      graph.num_bs != static_cast<int>(scenario.bs.size()) ||
      graph.link_gain.size() != graph.links.size()) {
    throw ModelError("link graph and scenario dimensions differ");
  }
  Problem p;
  const InterferenceOperator& op = graph.interference;
  const int n = static_cast<int>(graph.links.size());
  const int nb = op.num_active();
  p.layout_ = {n, nb, graph.num_ms};
  p.num_scenario_bs_ = graph.num_bs;
  p.scenario_bs_ = op.active_bs();
  p.rho_max_ = params.rho_max;
  p.beta_ = params.BetaLinear();
  p.floor_ = economics.rate_floor_mbps();
  p.bs_links_.assign(nb, {});
  for (int j = 0; j < nb; ++j) {
    const BaseStation& b = scenario.bs[p.scenario_bs_[j]];
    const bool femto = !IsOperator(b.cls);
    if (femto && !std::isfinite(economics.price_femto)) {
      throw ModelError("femto cell " + std::to_string(b.id) +
                       " has links under an infinite price");
    }
    p.bandwidth_.push_back(b.bandwidth_hz * 1e-6);
    p.cap_.push_back(femto ? b.backhaul_cap_bps * 1e-6 : INFINITY);
    p.price_.push_back(femto ? economics.price_femto : 0.0);
    p.is_femto_.push_back(femto);
  }
  p.ms_begin_ = graph.ms_link_begin;
  for (int l = 0; l < n; ++l) {
    const int j = op.link_active(l);
    p.link_ms_.push_back(graph.links[l].ms);
    p.link_bs_.push_back(j);
    p.bs_links_[j].push_back(l);
    p.snr_.push_back(graph.SignalPsd(l) / graph.noise_floor);
  }
  p.g_ = op.Scaled(1e6 / graph.noise_floor);
  std::vector<double> full(n);
  for (int l = 0; l < n; ++l) {
    const int j = p.link_bs_[l];
    full[l] = p.bandwidth_[j] / p.bs_links_[j].size();
  }
  p.z_max_.resize(n);
  p.g_.Apply(full, p.z_max_);
  for (int l = 0; l < n; ++l) {
    p.int_scale_.push_back(std::max(1.0, p.g_.RowMax(l)));
  }
  p.b_.assign(p.num_rows(), 0.0);
  for (int j = 0; j < nb; ++j) {
    p.b_[p.num_ms() + p.num_bs() + n + j] = p.bandwidth_[j];
  }
  return p;
}

Solution MakeSolution(const Problem& problem, std::vector<double> theta) {
  const ThetaLayout& t = problem.layout();
  Solution s;
  s.feasibility = problem.Feasibility(theta);
  s.net_utility = problem.NetUtility(theta);
  s.single_path = true;
  s.per_ms_rate_bps.resize(problem.num_ms());
  s.per_bs_rate_bps.assign(problem.num_scenario_bs(), 0.0);
  for (int i = 0; i < problem.num_ms(); ++i) {
    int used = 0;
    for (int l = problem.ms_link_begin(i); l < problem.ms_link_end(i); ++l) {
      if (theta[t.r(l)] > 0.0) ++used;
    }
    if (used > 1) s.single_path = false;
    s.per_ms_rate_bps[i] = theta[t.rms(i)] * 1e6;
    if (theta[t.rms(i)] < problem.rate_floor()) ++s.floored_ms;
  }
  for (int j = 0; j < problem.num_bs(); ++j) {
    s.per_bs_rate_bps[problem.scenario_bs(j)] = theta[t.rbs(j)] * 1e6;
  }
  s.theta = std::move(theta);
  return s;
}

}  // namespace offload
