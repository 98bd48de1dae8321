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

#ifndef OFFLOAD_PROBLEM_H_
#define OFFLOAD_PROBLEM_H_

#include <span>
#include <vector>

#include <Eigen/SparseCore>

#include "offload/channel.h"
#include "offload/economics.h"
#include "offload/link_graph.h"
#include "offload/scenario.h"

namespace offload {

// Position of each block of theta = (r, rBS, rMS, w, z). Inside the solver
// rates are in Mbps, bandwidth in MHz and interference in multiples of the
// noise floor. BS indices are local: only cells with at least one link take
// part in the problem.
struct ThetaLayout {
  int num_links = 0;
  int num_bs = 0;
  int num_ms = 0;

  int r(int link) const { return link; }
  int rbs(int bs) const { return num_links + bs; }
  int rms(int ms) const { return num_links + num_bs + ms; }
  int w(int link) const { return num_links + num_bs + num_ms + link; }
  int z(int link) const { return 2 * num_links + num_bs + num_ms + link; }
  int size() const { return 3 * num_links + num_bs + num_ms; }
};

// Rows of A theta <= b, in this order, followed (for reporting only) by the
// nonlinear rows r <= w rho(z) and the variable bounds:
//   MS rows   rMS_i - sum_j r_ij <= 0
//   BS rows   sum_i r_ij - rBS_j <= 0
//   INT rows  ((G w)_ij - z_ij) / s_ij <= 0, s_ij = max(1, max row entry)
//   BW rows   sum_i w_ij <= W_j
// Every row of A has unit max-norm.
enum class RowFamily {
  kMsRate,
  kBsRate,
  kInterference,
  kBandwidth,
  kRate,   // r <= w rho(z), one per link
  kBound,  // variable bounds, one per theta entry then one per BS cap
};
const char* RowFamilyName(RowFamily f);

struct FeasibilityReport {
  double max_violation = 0.0;  // relative; see Problem::Feasibility
  int row = -1;                // -1 when nothing is violated
  RowFamily family = RowFamily::kMsRate;
};

class Problem {
 public:
  const ThetaLayout& layout() const { return layout_; }
  int num_links() const { return layout_.num_links; }
  int num_bs() const { return layout_.num_bs; }
  int num_ms() const { return layout_.num_ms; }
  int num_rows() const { return 2 * num_bs() + num_ms() + num_links(); }
  RowFamily family(int row) const;

  int link_ms(int l) const { return link_ms_[l]; }
  int link_bs(int l) const { return link_bs_[l]; }  // local index
  int ms_link_begin(int i) const { return ms_begin_[i]; }
  int ms_link_end(int i) const { return ms_begin_[i + 1]; }
  const std::vector<int>& bs_links(int j) const { return bs_links_[j]; }
  int scenario_bs(int j) const { return scenario_bs_[j]; }
  int num_scenario_bs() const { return num_scenario_bs_; }

  double bandwidth(int j) const { return bandwidth_[j]; }       // MHz
  double backhaul_cap(int j) const { return cap_[j]; }          // Mbps
  double price(int j) const { return price_[j]; }               // per Mbps
  bool is_femto(int j) const { return is_femto_[j]; }
  double snr_full(int l) const { return snr_[l]; }              // g psi / N0
  double z_max(int l) const { return z_max_[l]; }
  double int_scale(int l) const { return int_scale_[l]; }
  double rho_max() const { return rho_max_; }
  double beta() const { return beta_; }
  double rate_floor() const { return floor_; }                  // Mbps
  const InterferenceOperator& g() const { return g_; }
  const std::vector<double>& b() const { return b_; }

  // min(log2(1 + beta snr / (1 + z)), rho_max).
  double Rho(int l, double z) const;

  void ApplyA(std::span<const double> theta, std::span<double> out) const;
  void ApplyAT(std::span<const double> mu, std::span<double> out) const;
  Eigen::SparseMatrix<double, Eigen::RowMajor> MatrixA() const;

  // Largest violation over A theta <= b and r <= w rho(z), each divided by
  // max(1, magnitude of the row's terms).
  FeasibilityReport Feasibility(std::span<const double> theta) const;
  // sum_i log(max(rMS_i, floor)) - sum_femto p rBS_j.
  double NetUtility(std::span<const double> theta) const;

 private:
  friend Problem Assemble(const LinkGraph&, const Scenario&,
                          const EconomicsModel&, const ChannelParams&);
  ThetaLayout layout_;
  int num_scenario_bs_ = 0;
  std::vector<int> link_ms_, link_bs_, ms_begin_, scenario_bs_;
  std::vector<std::vector<int>> bs_links_;
  std::vector<double> bandwidth_, cap_, price_;
  std::vector<bool> is_femto_;
  std::vector<double> snr_, z_max_, int_scale_;
  double rho_max_ = 4.8;
  double beta_ = 0.5;
  double floor_ = 1e-3;
  InterferenceOperator g_;
  std::vector<double> b_;
};

Problem Assemble(const LinkGraph& graph, const Scenario& scenario,
                 const EconomicsModel& economics, const ChannelParams& params);

struct Solution {
  std::vector<double> theta;
  double net_utility = 0.0;
  FeasibilityReport feasibility;
  bool single_path = false;
  int floored_ms = 0;  // MSs whose rate sits below the utility floor
  std::vector<double> per_ms_rate_bps;
  std::vector<double> per_bs_rate_bps;  // scenario BS order
};

Solution MakeSolution(const Problem& problem, std::vector<double> theta);

}  // namespace offload

#endif  // OFFLOAD_PROBLEM_H_
