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

#include "offload/link_graph.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>

#include "offload/errors.h"

namespace offload {

InterferenceOperator::InterferenceOperator(int num_ms,
                                           std::vector<int> active_bs,
                                           std::vector<int> tier,
                                           std::vector<double> coupling,
                                           std::vector<int> link_ms,
                                           std::vector<int> link_active)
    : num_ms_(num_ms),
      active_bs_(std::move(active_bs)),
      tier_(std::move(tier)),
      coupling_(std::move(coupling)),
      link_ms_(std::move(link_ms)),
      link_active_(std::move(link_active)) {
  const int na = num_active();
  num_tiers_ = 1;
  for (int t : tier_) num_tiers_ = std::max(num_tiers_, t + 1);
  ms_begin_.assign(num_ms_ + 1, 0);
  for (size_t l = 0; l < link_ms_.size(); ++l) {
    if (l > 0 && link_ms_[l] < link_ms_[l - 1]) {
      throw ModelError("links must be grouped by MS");
    }
    ++ms_begin_[link_ms_[l] + 1];
  }
  std::partial_sum(ms_begin_.begin(), ms_begin_.end(), ms_begin_.begin());
  foreign_ = coupling_;
  for (size_t l = 0; l < link_ms_.size(); ++l) {
    foreign_[static_cast<size_t>(link_ms_[l]) * na + link_active_[l]] = 0.0;
  }
  foreign_max_.assign(static_cast<size_t>(num_ms_) * num_tiers_, 0.0);
  for (int i = 0; i < num_ms_; ++i) {
    for (int a = 0; a < na; ++a) {
      double& m = foreign_max_[static_cast<size_t>(i) * num_tiers_ + tier_[a]];
      m = std::max(m, foreign_[static_cast<size_t>(i) * na + a]);
    }
  }
}

void InterferenceOperator::Apply(std::span<const double> w,
                                 std::span<double> z) const {
  const int na = num_active();
  std::vector<double> load(na, 0.0);
  for (size_t l = 0; l < link_ms_.size(); ++l) load[link_active_[l]] += w[l];
  std::vector<double> total(num_tiers_);
  for (int i = 0; i < num_ms_; ++i) {
    const int begin = ms_begin_[i];
    const int end = ms_begin_[i + 1];
    if (begin == end) continue;
    std::fill(total.begin(), total.end(), 0.0);
    const double* row = &foreign_[static_cast<size_t>(i) * na];
    if (num_tiers_ == 1) {
      double acc = 0.0;
      for (int a = 0; a < na; ++a) acc += row[a] * load[a];
      total[0] = acc;
    } else {
      for (int a = 0; a < na; ++a) total[tier_[a]] += row[a] * load[a];
    }
    const double* full = &coupling_[static_cast<size_t>(i) * na];
    for (int l = begin; l < end; ++l) {
      const int t = tier_[link_active_[l]];
      double acc = total[t];
      for (int o = begin; o < end; ++o) {
        const int a = link_active_[o];
        if (o != l && tier_[a] == t) acc += full[a] * load[a];
      }
      z[l] = acc;
    }
  }
}

void InterferenceOperator::ApplyTranspose(std::span<const double> nu,
                                          std::span<double> out) const {
  const int na = num_active();
  std::vector<double> column(na, 0.0);
  std::vector<double> per_tier(num_tiers_);
  for (int i = 0; i < num_ms_; ++i) {
    const int begin = ms_begin_[i];
    const int end = ms_begin_[i + 1];
    if (begin == end) continue;
    std::fill(per_tier.begin(), per_tier.end(), 0.0);
    for (int l = begin; l < end; ++l) {
      per_tier[tier_[link_active_[l]]] += nu[l];
    }
    const double* row = &foreign_[static_cast<size_t>(i) * na];
    if (num_tiers_ == 1) {
      const double s = per_tier[0];
      if (s != 0.0) {
        for (int a = 0; a < na; ++a) column[a] += row[a] * s;
      }
    } else {
      for (int a = 0; a < na; ++a) column[a] += row[a] * per_tier[tier_[a]];
    }
    // Candidate columns: rows of the other links of this MS.
    const double* full = &coupling_[static_cast<size_t>(i) * na];
    for (int l = begin; l < end; ++l) {
      const int a = link_active_[l];
      double s = 0.0;
      for (int o = begin; o < end; ++o) {
        if (o != l && tier_[link_active_[o]] == tier_[a]) s += nu[o];
      }
      column[a] += full[a] * s;
    }
  }
  for (size_t l = 0; l < link_ms_.size(); ++l) out[l] = column[link_active_[l]];
}

double InterferenceOperator::RowMax(int link) const {
  const int i = link_ms_[link];
  const int t = tier_[link_active_[link]];
  double m = foreign_max_[static_cast<size_t>(i) * num_tiers_ + t];
  for (int o = ms_begin_[i]; o < ms_begin_[i + 1]; ++o) {
    const int a = link_active_[o];
    if (o != link && tier_[a] == t) m = std::max(m, coupling(i, a));
  }
  return m;
}

InterferenceOperator InterferenceOperator::Scaled(double factor) const {
  InterferenceOperator out = *this;
  for (double& v : out.coupling_) v *= factor;
  for (double& v : out.foreign_) v *= factor;
  for (double& v : out.foreign_max_) v *= factor;
  return out;
}

Eigen::SparseMatrix<double, Eigen::RowMajor> InterferenceOperator::ToSparse()
    const {
  const int n = num_links();
  std::vector<Eigen::Triplet<double>> entries;
  for (int l = 0; l < n; ++l) {
    const int i = link_ms_[l];
    const int own = link_active_[l];
    for (int c = 0; c < n; ++c) {
      const int a = link_active_[c];
      if (a == own || tier_[a] != tier_[own]) continue;
      const double v = coupling(i, a);
      if (v != 0.0) entries.emplace_back(l, c, v);
    }
  }
  Eigen::SparseMatrix<double, Eigen::RowMajor> g(n, n);
  g.setFromTriplets(entries.begin(), entries.end());
  return g;
}

double LinkGainLinear(const Scenario& scenario, const ChannelParams& params,
                      const ShadowField& shadow, int ms, int bs) {
  const BaseStation& b = scenario.bs[bs];
  const MobileStation& m = scenario.ms[ms];
  const Position d = scenario.area.Displacement(b.position, m.position);
  const double distance = std::hypot(d.x, d.y);
  double db = -PathlossDbAtDistance(distance, b.indoor_wall_loss_db, params) -
              shadow.at(ms, bs);
  if (b.cls == BsClass::kOperatorMacroSector) {
    db += AntennaGainDb(b.sector_azimuth_deg, BearingDeg(d), params);
  }
  return std::pow(10.0, db / 10.0);
}

LinkGraph BuildLinkGraph(const Scenario& scenario, const ChannelParams& params,
                         Coupling coupling, uint64_t seed,
                         const LinkGraphOptions& options) {
  return BuildLinkGraph(scenario, params, coupling,
                        DrawShadowing(scenario, params, seed), options);
}

LinkGraph BuildLinkGraph(const Scenario& scenario, const ChannelParams& params,
                         Coupling coupling, const ShadowField& shadow,
                         const LinkGraphOptions& options) {
  params.Validate();
  LinkGraph g;
  g.num_ms = static_cast<int>(scenario.ms.size());
  g.num_bs = static_cast<int>(scenario.bs.size());
  g.coupling = coupling;
  g.noise_floor = params.NoiseFloorWPerHz();
  g.tx_psd.resize(g.num_bs);
  g.bandwidth_hz.resize(g.num_bs);
  for (int j = 0; j < g.num_bs; ++j) {
    const BaseStation& b = scenario.bs[j];
    if (!(b.bandwidth_hz > 0)) throw ModelError("BS bandwidth must be > 0");
    g.bandwidth_hz[j] = b.bandwidth_hz;
    g.tx_psd[j] = std::pow(10.0, (b.tx_power_dbm - 30.0) / 10.0) /
                  b.bandwidth_hz;
  }

  // Gains for every pair; candidates are the K strongest received PSDs.
  std::vector<double> gain(static_cast<size_t>(g.num_ms) * g.num_bs);
  std::vector<int> order(g.num_bs);
  g.gamma_ms.assign(g.num_ms, {});
  g.gamma_bs.assign(g.num_bs, {});
  for (int i = 0; i < g.num_ms; ++i) {
    double* row = &gain[static_cast<size_t>(i) * g.num_bs];
    for (int j = 0; j < g.num_bs; ++j) {
      row[j] = LinkGainLinear(scenario, params, shadow, i, j);
    }
    order.clear();
    for (int j = 0; j < g.num_bs; ++j) {
      if (options.include_femtos || IsOperator(scenario.bs[j].cls)) {
        order.push_back(j);
      }
    }
    if (order.empty()) {
      throw ModelError("MS " + std::to_string(i) + " has no candidate cell");
    }
    auto stronger = [&](int a, int b) {
      const double pa = row[a] * g.tx_psd[a];
      const double pb = row[b] * g.tx_psd[b];
      return pa > pb || (pa == pb && a < b);
    };
    const int k = std::min<int>(params.candidates, order.size());
    std::partial_sort(order.begin(), order.begin() + k, order.end(), stronger);
    std::vector<int> cand(order.begin(), order.begin() + k);
    const bool has_operator = std::any_of(cand.begin(), cand.end(), [&](int j) {
      return IsOperator(scenario.bs[j].cls);
    });
    if (!has_operator) {
      int best = -1;
      for (int j = 0; j < g.num_bs; ++j) {
        if (IsOperator(scenario.bs[j].cls) && (best < 0 || stronger(j, best))) {
          best = j;
        }
      }
      if (best < 0) {
        throw ModelError("MS " + std::to_string(i) +
                         " has no operator cell among its candidates");
      }
      cand.back() = best;
    }
    std::sort(cand.begin(), cand.end());
    g.gamma_ms[i] = cand;
  }

  // Links in (ms, bs) order; active BSs are those with at least one link.
  std::vector<int> active_index(g.num_bs, -1);
  std::vector<int> active_bs;
  for (int i = 0; i < g.num_ms; ++i) {
    for (int j : g.gamma_ms[i]) {
      const double gij = gain[static_cast<size_t>(i) * g.num_bs + j];
      if (!(gij > 0)) {
        throw ModelError("non-positive link gain for MS " + std::to_string(i));
      }
      g.links.push_back({i, j});
      g.link_gain.push_back(gij);
      g.gamma_bs[j].push_back(i);
      active_index[j] = 0;
    }
  }
  for (int j = 0; j < g.num_bs; ++j) {
    if (active_index[j] == 0) {
      active_index[j] = static_cast<int>(active_bs.size());
      active_bs.push_back(j);
    }
  }
  g.ms_link_begin.assign(g.num_ms + 1, 0);
  for (const Link& l : g.links) ++g.ms_link_begin[l.ms + 1];
  std::partial_sum(g.ms_link_begin.begin(), g.ms_link_begin.end(),
                   g.ms_link_begin.begin());

  const int na = static_cast<int>(active_bs.size());
  std::vector<int> tier(na, 0);
  if (coupling == Coupling::kSplitSpectrum) {
    for (int a = 0; a < na; ++a) {
      tier[a] = IsOperator(scenario.bs[active_bs[a]].cls) ? 0 : 1;
    }
  }
  std::vector<double> table(static_cast<size_t>(g.num_ms) * na);
  for (int i = 0; i < g.num_ms; ++i) {
    for (int a = 0; a < na; ++a) {
      const int k = active_bs[a];
      table[static_cast<size_t>(i) * na + a] =
          gain[static_cast<size_t>(i) * g.num_bs + k] * g.tx_psd[k] /
          g.bandwidth_hz[k];
    }
  }
  std::vector<int> link_ms, link_active;
  for (const Link& l : g.links) {
    link_ms.push_back(l.ms);
    link_active.push_back(active_index[l.bs]);
  }
  g.interference =
      InterferenceOperator(g.num_ms, std::move(active_bs), std::move(tier),
                           std::move(table), std::move(link_ms),
                           std::move(link_active));
  return g;
}

double SpectralEfficiency(double z, int link, const LinkGraph& graph,
                          const ChannelParams& params) {
  return SpectralEfficiency(graph.SignalPsd(link) / (graph.noise_floor + z),
                            params);
}

void WriteLinkGraphCsv(const LinkGraph& graph, std::ostream& out) {
  out << "ms,bs,gain\n";
  char buffer[64];
  for (size_t l = 0; l < graph.links.size(); ++l) {
    std::snprintf(buffer, sizeof(buffer), "%.6g", graph.link_gain[l]);
    out << graph.links[l].ms << ',' << graph.links[l].bs << ',' << buffer
        << '\n';
  }
}

}  // namespace offload
