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

#include "offload/recovery.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace offload {

void WaterFill(std::span<double> c, double cap) {
  double total = 0.0;
  for (double v : c) total += v;
  if (total <= cap) return;
  std::vector<double> sorted(c.begin(), c.end());
  std::sort(sorted.begin(), sorted.end());
  // Find the level: the first k entries stay, the rest are cut to `level`.
  double below = 0.0;
  const size_t n = sorted.size();
  double level = 0.0;
  for (size_t k = 0; k < n; ++k) {
    const double candidate = (cap - below) / static_cast<double>(n - k);
    if (candidate <= sorted[k]) {
      level = candidate;
      break;
    }
    below += sorted[k];
  }
  for (double& v : c) v = std::min(v, level);
}

Solution RecoverFeasible(const Problem& problem, std::span<const double> w_in) {
  const ThetaLayout& t = problem.layout();
  const int n = problem.num_links();
  std::vector<double> w(w_in.begin(), w_in.end());
  for (double& v : w) v = std::max(v, 0.0);
  for (int j = 0; j < problem.num_bs(); ++j) {
    double load = 0.0;
    for (int l : problem.bs_links(j)) load += w[l];
    if (load > problem.bandwidth(j)) {
      const double scale = problem.bandwidth(j) / load;
      for (int l : problem.bs_links(j)) w[l] *= scale;
    }
  }

  std::vector<double> z(n), r(n), buffer;
  for (int round = 0; round < 10; ++round) {
    problem.g().Apply(w, z);
    for (int l = 0; l < n; ++l) r[l] = w[l] * problem.Rho(l, z[l]);
    for (int j = 0; j < problem.num_bs(); ++j) {
      if (!std::isfinite(problem.backhaul_cap(j))) continue;
      const auto& links = problem.bs_links(j);
      buffer.resize(links.size());
      for (size_t k = 0; k < links.size(); ++k) buffer[k] = r[links[k]];
      WaterFill(buffer, problem.backhaul_cap(j));
      for (size_t k = 0; k < links.size(); ++k) r[links[k]] = buffer[k];
    }
    // Femto price trim. u(x) = log(max(x, floor)) is flat then concave, so
    // over [0, F] the best femto total is one of the three candidates.
    const double floor = problem.rate_floor();
    for (int i = 0; i < problem.num_ms(); ++i) {
      double own = 0.0, femto = 0.0, price = 0.0;
      for (int l = problem.ms_link_begin(i); l < problem.ms_link_end(i); ++l) {
        const int j = problem.link_bs(l);
        if (problem.is_femto(j)) {
          femto += r[l];
          price = std::max(price, problem.price(j));
        } else {
          own += r[l];
        }
      }
      if (femto <= 0.0 || price <= 0.0) continue;
      auto value = [&](double f) {
        return std::log(std::max(own + f, floor)) - price * f;
      };
      double keep = femto;
      double best = value(femto);
      for (double f : {std::clamp(1.0 / price - own, 0.0, femto), 0.0}) {
        if (value(f) > best) {
          best = value(f);
          keep = f;
        }
      }
      if (keep == femto) continue;
      const double scale = keep / femto;
      for (int l = problem.ms_link_begin(i); l < problem.ms_link_end(i); ++l) {
        if (problem.is_femto(problem.link_bs(l))) r[l] *= scale;
      }
    }
    bool dead = false;
    for (int l = 0; l < n; ++l) {
      if (w[l] > 0.0 && r[l] <= 0.0) {
        w[l] = 0.0;
        dead = true;
      }
    }
    if (!dead) break;
  }
  // Dropping load only lowers interference, so r stays below w rho(G w).
  problem.g().Apply(w, z);

  std::vector<double> theta(t.size(), 0.0);
  for (int l = 0; l < n; ++l) {
    theta[t.r(l)] = r[l];
    theta[t.w(l)] = w[l];
    theta[t.z(l)] = z[l];
    theta[t.rbs(problem.link_bs(l))] += r[l];
    theta[t.rms(problem.link_ms(l))] += r[l];
  }
  return MakeSolution(problem, std::move(theta));
}

Solution TruncateSinglePath(const Solution& multipath, const Problem& problem) {
  const ThetaLayout& t = problem.layout();
  const std::vector<double>& theta = multipath.theta;
  std::vector<double> w(problem.num_links(), 0.0);
  for (int i = 0; i < problem.num_ms(); ++i) {
    const int begin = problem.ms_link_begin(i);
    const int end = problem.ms_link_end(i);
    if (begin == end) continue;
    int keep = begin;  // links are ordered by BS id, so '>' breaks ties low
    for (int l = begin + 1; l < end; ++l) {
      if (theta[t.r(l)] > theta[t.r(keep)]) keep = l;
    }
    w[keep] = theta[t.w(keep)];
  }
  for (int j = 0; j < problem.num_bs(); ++j) {
    double before = 0.0, after = 0.0;
    for (int l : problem.bs_links(j)) {
      before += theta[t.w(l)];
      after += w[l];
    }
    if (after > 0.0 && after != before) {
      const double scale = before / after;
      for (int l : problem.bs_links(j)) w[l] *= scale;
    }
  }
  return RecoverFeasible(problem, w);
}

namespace {

// Association state for the local search. A BS with at least one MS uses its
// whole band; `total_` holds, per MS and tier, the interference every serving
// BS would cause on a link of that MS.
class AssociationModel {
 public:
  explicit AssociationModel(const Problem& p)
      : p_(p), members_(p.num_bs()), assoc_(p.num_ms(), -1) {
    for (int a = 0; a < p.num_bs(); ++a) {
      tiers_ = std::max(tiers_, p.g().tier(a) + 1);
    }
    total_.assign(static_cast<size_t>(p.num_ms()) * tiers_, 0.0);
    value_.assign(p.num_bs(), 0.0);
  }

  int assoc(int i) const { return assoc_[i]; }
  int size(int j) const { return static_cast<int>(members_[j].size()); }

  // Moves MS i onto `link` (-1 to detach) and keeps the interference sums
  // current. Cached BS values are not refreshed.
  void Move(int i, int link) {
    const int from = assoc_[i];
    if (from >= 0) {
      const int j = p_.link_bs(from);
      auto& m = members_[j];
      m.erase(std::find(m.begin(), m.end(), from));
      if (m.empty()) ChangeLoad(j, -p_.bandwidth(j));
    }
    assoc_[i] = link;
    if (link >= 0) {
      const int j = p_.link_bs(link);
      if (members_[j].empty()) ChangeLoad(j, p_.bandwidth(j));
      members_[j].push_back(link);
    }
  }

  double Interference(int link) const {
    const int i = p_.link_ms(link);
    const int j = p_.link_bs(link);
    const double own = members_[j].empty() ? 0.0 : p_.bandwidth(j);
    const double z = total_[static_cast<size_t>(i) * tiers_ + p_.g().tier(j)] -
                     p_.g().coupling(i, j) * own;
    return std::max(z, 0.0);
  }

  // Net utility of BS j serving `links` (plus `extra` when >= 0) on an equal
  // split, after the backhaul cap and the femto price trim.
  double BsValue(int j, const std::vector<int>& links, int skip = -1,
                 int extra = -1) {
    rates_.clear();
    const int n = static_cast<int>(links.size()) - (skip >= 0 ? 1 : 0) +
                  (extra >= 0 ? 1 : 0);
    if (n == 0) return 0.0;
    const double share = p_.bandwidth(j) / n;
    for (int l : links) {
      if (l != skip) rates_.push_back(share * p_.Rho(l, Interference(l)));
    }
    if (extra >= 0) {
      // A joining MS sees the BS's own term removed, as every member does.
      const int i = p_.link_ms(extra);
      const double z = total_[static_cast<size_t>(i) * tiers_ +
                              p_.g().tier(j)] -
                       (members_[j].empty() ? 0.0
                                            : p_.g().coupling(i, j) *
                                                  p_.bandwidth(j));
      rates_.push_back(share * p_.Rho(extra, std::max(z, 0.0)));
    }
    if (std::isfinite(p_.backhaul_cap(j))) {
      WaterFill(rates_, p_.backhaul_cap(j));
    }
    const double floor = p_.rate_floor();
    const double price = p_.is_femto(j) ? p_.price(j) : 0.0;
    double value = 0.0;
    for (double x : rates_) {
      auto net = [&](double f) {
        return std::log(std::max(f, floor)) - price * f;
      };
      double best = net(x);
      if (price > 0.0) {
        best = std::max({best, net(std::clamp(1.0 / price, 0.0, x)), net(0.0)});
      }
      value += best;
    }
    return value;
  }

  double Refresh() {
    double total = 0.0;
    for (int j = 0; j < p_.num_bs(); ++j) {
      value_[j] = BsValue(j, members_[j]);
      total += value_[j];
    }
    for (int i = 0; i < p_.num_ms(); ++i) {
      if (assoc_[i] < 0) total += std::log(p_.rate_floor());
    }
    return total;
  }

  double cached(int j) const { return value_[j]; }
  const std::vector<int>& members(int j) const { return members_[j]; }

  std::vector<double> Bandwidth() const {
    std::vector<double> w(p_.num_links(), 0.0);
    for (int j = 0; j < p_.num_bs(); ++j) {
      for (int l : members_[j]) w[l] = p_.bandwidth(j) / members_[j].size();
    }
    return w;
  }

 private:
  void ChangeLoad(int j, double delta) {
    const int tier = p_.g().tier(j);
    for (int i = 0; i < p_.num_ms(); ++i) {
      total_[static_cast<size_t>(i) * tiers_ + tier] +=
          p_.g().coupling(i, j) * delta;
    }
  }

  const Problem& p_;
  int tiers_ = 1;
  std::vector<std::vector<int>> members_;
  std::vector<int> assoc_;
  std::vector<double> total_;
  std::vector<double> value_;
  std::vector<double> rates_;
};

}  // namespace

Solution ImproveAssociation(const Solution& start, const Problem& problem,
                            int max_passes) {
  const ThetaLayout& t = problem.layout();
  AssociationModel model(problem);
  for (int i = 0; i < problem.num_ms(); ++i) {
    int keep = -1;
    for (int l = problem.ms_link_begin(i); l < problem.ms_link_end(i); ++l) {
      if (start.theta[t.r(l)] > 0.0 &&
          (keep < 0 || start.theta[t.r(l)] > start.theta[t.r(keep)])) {
        keep = l;
      }
    }
    if (keep >= 0) model.Move(i, keep);
  }
  double current = model.Refresh();
  const double floor_log = std::log(problem.rate_floor());
  for (int pass = 0; pass < max_passes; ++pass) {
    bool moved = false;
    for (int i = 0; i < problem.num_ms(); ++i) {
      const int from = model.assoc(i);
      const int from_bs = from >= 0 ? problem.link_bs(from) : -1;
      double best_gain = 1e-9 * std::max(1.0, std::abs(current));
      int best_link = -1;
      for (int l = problem.ms_link_begin(i); l < problem.ms_link_end(i); ++l) {
        if (l == from) continue;
        const int to_bs = problem.link_bs(l);
        double gain;
        const bool load_changes =
            model.size(to_bs) == 0 || (from >= 0 && model.size(from_bs) == 1);
        if (load_changes) {
          model.Move(i, l);
          gain = model.Refresh() - current;
          model.Move(i, from);
          model.Refresh();
        } else {
          gain = model.BsValue(to_bs, model.members(to_bs), -1, l) -
                 model.cached(to_bs);
          if (from >= 0) {
            gain += model.BsValue(from_bs, model.members(from_bs), from) -
                    model.cached(from_bs);
          } else {
            gain -= floor_log;
          }
        }
        if (gain > best_gain) {
          best_gain = gain;
          best_link = l;
        }
      }
      if (best_link >= 0) {
        model.Move(i, best_link);
        current = model.Refresh();
        moved = true;
      }
    }
    if (!moved) break;
  }
  Solution improved = RecoverFeasible(problem, model.Bandwidth());
  return improved.net_utility > start.net_utility ? improved : start;
}

}  // namespace offload
