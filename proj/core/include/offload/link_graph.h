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

#ifndef OFFLOAD_LINK_GRAPH_H_
#define OFFLOAD_LINK_GRAPH_H_

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include <Eigen/SparseCore>

#include "offload/channel.h"
#include "offload/scenario.h"

namespace offload {

enum class Coupling { kCoChannel, kSplitSpectrum };

struct Link {
  int ms = 0;
  int bs = 0;
};

// The interference matrix G in structured form. Row and column index links;
// entry (l, l') with l = (i, j), l' = (m, k) is coupling(i, k) when k != j
// and k shares spectrum with j, else 0. Every row is determined by its MS
// and every column by its BS, so G is stored as a dense MS x active-BS
// coupling table and applied in O(MS * BS + links * K) instead of
// O(links^2).
class InterferenceOperator {
 public:
  InterferenceOperator() = default;
  // `coupling` is row-major num_ms x active_bs.size(); `tier` is per active
  // BS; `link_active` maps each link to its active-BS column. Links must be
  // grouped by MS in increasing MS order.
  InterferenceOperator(int num_ms, std::vector<int> active_bs,
                       std::vector<int> tier, std::vector<double> coupling,
                       std::vector<int> link_ms, std::vector<int> link_active);

  int num_links() const { return static_cast<int>(link_ms_.size()); }
  int num_active() const { return static_cast<int>(active_bs_.size()); }
  const std::vector<int>& active_bs() const { return active_bs_; }
  int link_active(int link) const { return link_active_[link]; }
  int tier(int active) const { return tier_[active]; }
  double coupling(int ms, int active) const {
    return coupling_[static_cast<size_t>(ms) * num_active() + active];
  }

  // z = G w. Sums only non-negative terms, so z matches direct summation to
  // rounding.
  void Apply(std::span<const double> w, std::span<double> z) const;
  // out = G^T nu.
  void ApplyTranspose(std::span<const double> nu, std::span<double> out) const;
  // Largest entry of row `link` (0 for an interference-free row).
  double RowMax(int link) const;

  InterferenceOperator Scaled(double factor) const;
  Eigen::SparseMatrix<double, Eigen::RowMajor> ToSparse() const;

 private:
  int num_ms_ = 0;
  int num_tiers_ = 1;
  std::vector<int> active_bs_;
  std::vector<int> tier_;
  std::vector<double> coupling_;
  // coupling_ with every (MS, own candidate) entry zeroed.
  std::vector<double> foreign_;
  std::vector<int> link_ms_;
  std::vector<int> link_active_;
  std::vector<int> ms_begin_;         // links of MS i: [ms_begin_[i], ms_begin_[i+1])
  std::vector<double> foreign_max_;   // per (MS, tier)
};

struct LinkGraphOptions {
  // False restricts candidate sets to operator cells.
  bool include_femtos = true;
};

struct LinkGraph {
  int num_ms = 0;
  int num_bs = 0;
  Coupling coupling = Coupling::kCoChannel;
  std::vector<Link> links;              // sorted by (ms, bs)
  std::vector<int> ms_link_begin;       // size num_ms + 1
  std::vector<std::vector<int>> gamma_ms;  // candidate BS indices per MS
  std::vector<std::vector<int>> gamma_bs;  // MS indices per BS
  std::vector<double> link_gain;        // linear power gain g_ij
  std::vector<double> tx_psd;           // psi_j = P_j / W_j, W/Hz
  std::vector<double> bandwidth_hz;     // W_j
  double noise_floor = 0.0;             // W/Hz
  // Maps per-link bandwidth (Hz) to interference PSD (W/Hz).
  InterferenceOperator interference;

  double SignalPsd(int link) const {
    return link_gain[link] * tx_psd[links[link].bs];
  }
};

// Linear gain 10^((-pathloss - shadow + antenna) / 10) of pair (ms, bs).
double LinkGainLinear(const Scenario& scenario, const ChannelParams& params,
                      const ShadowField& shadow, int ms, int bs);

LinkGraph BuildLinkGraph(const Scenario& scenario, const ChannelParams& params,
                         Coupling coupling, uint64_t seed,
                         const LinkGraphOptions& options = {});
LinkGraph BuildLinkGraph(const Scenario& scenario, const ChannelParams& params,
                         Coupling coupling, const ShadowField& shadow,
                         const LinkGraphOptions& options = {});

// Capped-Shannon efficiency of `link` under interference PSD z (W/Hz).
double SpectralEfficiency(double z, int link, const LinkGraph& graph,
                          const ChannelParams& params);

// Debug dump: "ms,bs,gain" per link.
void WriteLinkGraphCsv(const LinkGraph& graph, std::ostream& out);

}  // namespace offload

#endif  // OFFLOAD_LINK_GRAPH_H_
