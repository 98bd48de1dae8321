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

#include "offload_tools/config.h"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <vector>

#include "offload/errors.h"

namespace offload::tools {
namespace {

namespace fs = std::filesystem;
namespace pt = boost::property_tree;

std::string Number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

std::string Trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double ToDouble(const std::string& text, const std::string& key) {
  const std::string s = Trim(text);
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (s.empty() || ec != std::errc() || ptr != last || std::isnan(v)) {
    throw ParseError(key + ": expected a number, got '" + s + "'");
  }
  return v;
}

long long ToInteger(const std::string& text, const std::string& key) {
  const std::string s = Trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(key + ": expected an integer, got '" + s + "'");
  }
  return v;
}

std::vector<double> ToList(const std::string& text, const std::string& key) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(ToDouble(item, key));
  if (out.empty()) throw ParseError(key + ": empty list");
  return out;
}

std::string ListText(const std::vector<double>& values, double scale = 1.0) {
  std::string out;
  for (size_t k = 0; k < values.size(); ++k) {
    if (k) out += ", ";
    out += Number(values[k] * scale);
  }
  return out;
}

struct Bounds {
  double lo;
  double hi;
  bool lo_open = false;

  void Check(double v, const std::string& key) const {
    const bool ok = (lo_open ? v > lo : v >= lo) && v <= hi;
    if (!ok) {
      throw ConfigError(key + " = " + Number(v) + " is out of range " +
                        (lo_open ? "(" : "[") + Number(lo) + ", " +
                        Number(hi) + "]");
    }
  }
};

struct Key {
  std::string section;
  std::string name;
  std::function<void(RunConfig&, const std::string&, const std::string&)> set;
  // Returns nullopt for unset optional keys.
  std::function<std::optional<std::string>(const RunConfig&)> get;
};

using RealRef = std::function<double&(RunConfig&)>;
using IntRef = std::function<int&(RunConfig&)>;

Key Real(std::string section, std::string name, Bounds bounds, RealRef ref) {
  return {section, name,
          [bounds, ref](RunConfig& c, const std::string& v,
                        const std::string& key) {
            const double x = ToDouble(v, key);
            bounds.Check(x, key);
            ref(c) = x;
          },
          [ref](const RunConfig& c) -> std::optional<std::string> {
            return Number(ref(const_cast<RunConfig&>(c)));
          }};
}

Key Integer(std::string section, std::string name, Bounds bounds, IntRef ref) {
  return {section, name,
          [bounds, ref](RunConfig& c, const std::string& v,
                        const std::string& key) {
            const long long x = ToInteger(v, key);
            bounds.Check(static_cast<double>(x), key);
            ref(c) = static_cast<int>(x);
          },
          [ref](const RunConfig& c) -> std::optional<std::string> {
            return std::to_string(ref(const_cast<RunConfig&>(c)));
          }};
}

Key List(std::string section, std::string name, Bounds bounds, double scale,
         std::function<std::vector<double>&(RunConfig&)> ref) {
  return {section, name,
          [bounds, scale, ref](RunConfig& c, const std::string& v,
                               const std::string& key) {
            std::vector<double> values = ToList(v, key);
            for (double& x : values) {
              bounds.Check(x, key);
              x *= scale;
            }
            ref(c) = std::move(values);
          },
          [scale, ref](const RunConfig& c) -> std::optional<std::string> {
            return ListText(ref(const_cast<RunConfig&>(c)), 1.0 / scale);
          }};
}

template <typename E>
Key Choice(std::string section, std::string name,
           std::vector<std::pair<std::string, E>> options,
           std::function<E&(RunConfig&)> ref) {
  return {section, name,
          [options, ref](RunConfig& c, const std::string& v,
                         const std::string& key) {
            const std::string s = Trim(v);
            std::string allowed;
            for (const auto& [text, value] : options) {
              if (s == text) {
                ref(c) = value;
                return;
              }
              allowed += (allowed.empty() ? "" : ", ") + text;
            }
            throw ConfigError(key + " = '" + s + "' is not one of {" +
                              allowed + "}");
          },
          [options, ref](const RunConfig& c) -> std::optional<std::string> {
            const E value = ref(const_cast<RunConfig&>(c));
            for (const auto& [text, option] : options) {
              if (option == value) return text;
            }
            return std::nullopt;
          }};
}

Key Text(std::string section, std::string name,
         std::function<std::string&(RunConfig&)> ref, bool optional) {
  return {section, name,
          [ref](RunConfig& c, const std::string& v, const std::string&) {
            ref(c) = Trim(v);
          },
          [ref, optional](const RunConfig& c) -> std::optional<std::string> {
            const std::string& s = ref(const_cast<RunConfig&>(c));
            if (optional && s.empty()) return std::nullopt;
            return s;
          }};
}

const std::vector<Key>& Keys() {
  static const std::vector<Key> keys = [] {
    std::vector<Key> k;
    // [experiment]
    k.push_back({"experiment", "base_seed",
                 [](RunConfig& c, const std::string& v, const std::string& key) {
                   const std::string s = Trim(v);
                   uint64_t x = 0;
                   const auto [ptr, ec] =
                       std::from_chars(s.data(), s.data() + s.size(), x);
                   if (s.empty() || ec != std::errc() ||
                       ptr != s.data() + s.size()) {
                     throw ParseError(key + ": expected an unsigned integer");
                   }
                   c.base_seed = x;
                 },
                 [](const RunConfig& c) -> std::optional<std::string> {
                   return std::to_string(c.base_seed);
                 }});
    k.push_back(Integer("experiment", "drops", {1, 1e6},
                        [](RunConfig& c) -> int& { return c.drops; }));
    k.push_back(Text("experiment", "output_dir",
                     [](RunConfig& c) -> std::string& { return c.output_dir; },
                     false));

    // [scenario]
    using S = ScenarioConfig;
    auto sc = [](RunConfig& c) -> S& { return c.experiment.scenario; };
    k.push_back(Choice<Environment>(
        "scenario", "environment",
        {{"urban", Environment::kUrban}, {"suburban", Environment::kSuburban}},
        [sc](RunConfig& c) -> Environment& { return sc(c).environment; }));
    k.push_back(Real("scenario", "area_width_m", {0, 1e6, true},
                     [sc](RunConfig& c) -> double& { return sc(c).area_width_m; }));
    k.push_back(Real("scenario", "area_height_m", {0, 1e6, true},
                     [sc](RunConfig& c) -> double& { return sc(c).area_height_m; }));
    k.push_back(Choice<bool>(
        "scenario", "wrap_around", {{"true", true}, {"false", false}},
        [sc](RunConfig& c) -> bool& { return sc(c).wrap_around; }));
    k.push_back(Integer("scenario", "micro_cells", {1, 1e5},
                        [sc](RunConfig& c) -> int& { return sc(c).micro_cells; }));
    k.push_back(Integer("scenario", "macro_sites", {1, 1e4},
                        [sc](RunConfig& c) -> int& { return sc(c).macro_sites; }));
    k.push_back(Real("scenario", "split_factor", {1, 100},
                     [sc](RunConfig& c) -> double& { return sc(c).split_factor; }));
    k.push_back(Integer("scenario", "ap_count", {0, 1e7},
                        [sc](RunConfig& c) -> int& { return sc(c).ap_count; }));
    k.push_back(Real("scenario", "adoption_rate", {0, 1},
                     [sc](RunConfig& c) -> double& { return sc(c).adoption_rate; }));
    k.push_back(Integer("scenario", "ue_per_cell", {1, 1e4},
                        [sc](RunConfig& c) -> int& { return sc(c).ue_per_cell; }));
    k.push_back(Integer("scenario", "ue_count", {0, 1e6},
                        [sc](RunConfig& c) -> int& { return sc(c).ue_count; }));
    k.push_back(Real("scenario", "micro_tx_power_dbm", {-50, 80},
                     [sc](RunConfig& c) -> double& { return sc(c).micro_tx_power_dbm; }));
    k.push_back(Real("scenario", "macro_tx_power_dbm", {-50, 80},
                     [sc](RunConfig& c) -> double& { return sc(c).macro_tx_power_dbm; }));
    k.push_back(Real("scenario", "femto_tx_power_dbm", {-50, 80},
                     [sc](RunConfig& c) -> double& { return sc(c).femto_tx_power_dbm; }));
    k.push_back(Real("scenario", "bandwidth_hz", {0, 1e11, true},
                     [sc](RunConfig& c) -> double& { return sc(c).bandwidth_hz; }));
    k.push_back(List("scenario", "femto_backhaul_caps_mbps", {0, 1e6, true}, 1e6,
                     [sc](RunConfig& c) -> std::vector<double>& {
                       return sc(c).femto_backhaul_caps_bps;
                     }));
    k.push_back(Real("scenario", "femto_wall_loss_db", {0, 100},
                     [sc](RunConfig& c) -> double& { return sc(c).femto_wall_loss_db; }));
    k.push_back(Real("scenario", "min_isd_m", {0, 1e5, true},
                     [sc](RunConfig& c) -> double& { return sc(c).min_isd_m; }));
    k.push_back(Text("scenario", "operator_site_file",
                     [](RunConfig& c) -> std::string& { return c.operator_site_file; },
                     true));
    k.push_back(Text("scenario", "ap_site_file",
                     [](RunConfig& c) -> std::string& { return c.ap_site_file; },
                     true));
    auto origin = [](bool lat) {
      return Key{"scenario", lat ? "site_origin_lat" : "site_origin_lon",
                 [lat](RunConfig& c, const std::string& v, const std::string& key) {
                   const double x = ToDouble(v, key);
                   (lat ? Bounds{-90, 90} : Bounds{-180, 180}).Check(x, key);
                   if (!c.site_origin) c.site_origin = LatLon{};
                   (lat ? c.site_origin->lat_deg : c.site_origin->lon_deg) = x;
                 },
                 [lat](const RunConfig& c) -> std::optional<std::string> {
                   if (!c.site_origin) return std::nullopt;
                   return Number(lat ? c.site_origin->lat_deg
                                     : c.site_origin->lon_deg);
                 }};
    };
    k.push_back(origin(true));
    k.push_back(origin(false));

    // [channel]
    auto ch = [](RunConfig& c) -> ChannelParams& { return c.experiment.channel; };
    auto real = [&](const char* name, Bounds b, double ChannelParams::*m) {
      k.push_back(Real("channel", name, b,
                       [ch, m](RunConfig& c) -> double& { return ch(c).*m; }));
    };
    real("carrier_freq_ghz", {0, 1000, true}, &ChannelParams::carrier_freq_ghz);
    real("pathloss_a_db", {-100, 300}, &ChannelParams::pathloss_a_db);
    real("pathloss_b_db", {0, 100, true}, &ChannelParams::pathloss_b_db);
    real("shadow_std_micro_db", {0, 30}, &ChannelParams::shadow_std_micro_db);
    real("shadow_std_macro_db", {0, 30}, &ChannelParams::shadow_std_macro_db);
    real("shadow_std_femto_db", {0, 30}, &ChannelParams::shadow_std_femto_db);
    real("intersite_corr", {0, 1}, &ChannelParams::intersite_corr);
    real("intrasite_corr", {0, 1}, &ChannelParams::intrasite_corr);
    real("antenna_theta3db_deg", {0, 360, true},
         &ChannelParams::antenna_theta3db_deg);
    real("antenna_am_db", {0, 100}, &ChannelParams::antenna_am_db);
    real("noise_psd_dbm_hz", {-300, -100}, &ChannelParams::noise_psd_dbm_hz);
    real("ue_noise_figure_db", {0, 50}, &ChannelParams::ue_noise_figure_db);
    real("beta_loss_db", {0, 30}, &ChannelParams::beta_loss_db);
    real("rho_max", {0, 30, true}, &ChannelParams::rho_max);
    k.push_back(Integer("channel", "candidates", {1, 1e4},
                        [ch](RunConfig& c) -> int& { return ch(c).candidates; }));
    real("min_distance_m", {0, 1e4, true}, &ChannelParams::min_distance_m);
    k.push_back(Choice<Coupling>(
        "channel", "coupling",
        {{"co_channel", Coupling::kCoChannel},
         {"split_spectrum", Coupling::kSplitSpectrum}},
        [](RunConfig& c) -> Coupling& { return c.experiment.coupling; }));

    // [solver]
    auto so = [](RunConfig& c) -> SolverConfig& { return c.experiment.solver; };
    auto sreal = [&](const char* name, Bounds b, double SolverConfig::*m) {
      k.push_back(Real("solver", name, b,
                       [so, m](RunConfig& c) -> double& { return so(c).*m; }));
    };
    auto sint = [&](const char* name, Bounds b, int SolverConfig::*m) {
      k.push_back(Integer("solver", name, b,
                          [so, m](RunConfig& c) -> int& { return so(c).*m; }));
    };
    sreal("tau", {0, 1e6, true}, &SolverConfig::tau);
    sreal("tau_z", {0, 1e6}, &SolverConfig::tau_z);
    sreal("step0", {0, 1e6, true}, &SolverConfig::step0);
    k.push_back(Choice<StepRule>(
        "solver", "step_rule",
        {{"sqrt", StepRule::kDiminishingSqrt}, {"constant", StepRule::kConstant}},
        [so](RunConfig& c) -> StepRule& { return so(c).step_rule; }));
    sint("max_iters", {1, 1e8}, &SolverConfig::max_iters);
    sreal("feas_tol", {0, 1, true}, &SolverConfig::feas_tol);
    sint("z_grid", {2, 1e5}, &SolverConfig::z_grid);
    sint("golden_iters", {0, 1000}, &SolverConfig::golden_iters);
    sint("dual_bound_iters", {0, 1e8}, &SolverConfig::dual_bound_iters);
    sint("recovery_every", {1, 1e8}, &SolverConfig::recovery_every);

    // [economics]
    k.push_back(Real("economics", "price_femto", {0, INFINITY},
                     [](RunConfig& c) -> double& {
                       return c.experiment.economics.price_femto;
                     }));
    k.push_back(Real("economics", "rate_floor_bps", {0, 1e9, true},
                     [](RunConfig& c) -> double& {
                       return c.experiment.economics.rate_floor_bps;
                     }));

    // [sweep]
    k.push_back(Choice<SweepVariable>(
        "sweep", "variable",
        {{"adoption_rate", SweepVariable::kAdoptionRate},
         {"price", SweepVariable::kPrice},
         {"split_factor", SweepVariable::kSplitFactor}},
        [](RunConfig& c) -> SweepVariable& { return c.sweep.variable; }));
    k.push_back(List("sweep", "values", {-INFINITY, INFINITY}, 1.0,
                     [](RunConfig& c) -> std::vector<double>& {
                       return c.sweep.values;
                     }));
    k.push_back(Integer("sweep", "drops_per_point", {1, 1e6},
                        [](RunConfig& c) -> int& { return c.sweep.drops_per_point; }));

    // [compare]
    k.push_back(List("compare", "split_factors", {1, 100}, 1.0,
                     [](RunConfig& c) -> std::vector<double>& {
                       return c.compare.split_factors;
                     }));
    k.push_back(List("compare", "prices", {0, INFINITY}, 1.0,
                     [](RunConfig& c) -> std::vector<double>& {
                       return c.compare.prices;
                     }));
    k.push_back(Real("compare", "offload_adoption", {0, 1},
                     [](RunConfig& c) -> double& { return c.compare.offload_adoption; }));
    k.push_back(Integer("compare", "drops", {1, 1e6},
                        [](RunConfig& c) -> int& { return c.compare.drops; }));
    return k;
  }();
  return keys;
}

void CheckSweepValues(const RunConfig& c) {
  const std::string key = "sweep.values";
  for (double v : c.sweep.values) {
    switch (c.sweep.variable) {
      case SweepVariable::kAdoptionRate:
        Bounds{0, 1}.Check(v, key);
        break;
      case SweepVariable::kPrice:
        Bounds{0, INFINITY}.Check(v, key);
        break;
      case SweepVariable::kSplitFactor:
        Bounds{1, 100}.Check(v, key);
        break;
    }
  }
}

SiteIngestResult LoadSites(const std::string& path, SiteKind kind,
                           const RunConfig& c) {
  if (!fs::exists(path)) throw ConfigError("site file not found: " + path);
  SiteIngestOptions options;
  options.area_width_m = c.experiment.scenario.area_width_m;
  options.area_height_m = c.experiment.scenario.area_height_m;
  options.origin = c.site_origin;
  return IngestSites(path, kind, options);
}

}  // namespace

RunConfig ParseConfigString(const std::string& text,
                            const std::string& source_name,
                            const std::string& base_dir) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError(source_name + ":" + std::to_string(e.line()) + ": " +
                     e.message());
  }

  RunConfig c;
  c.sweep.values = {0.02, 0.05, 0.10, 0.15, 0.20};
  std::set<std::string> sections;
  for (const Key& key : Keys()) sections.insert(key.section);
  for (const auto& [section, body] : tree) {
    if (!sections.count(section) || !body.data().empty()) {
      throw ParseError(source_name + ": unknown section or top-level key '" +
                       section + "'");
    }
    for (const auto& [name, value] : body) {
      const std::string full = section + "." + name;
      const Key* match = nullptr;
      for (const Key& key : Keys()) {
        if (key.section == section && key.name == name) match = &key;
      }
      if (!match) throw ParseError(source_name + ": unknown key '" + full + "'");
      match->set(c, value.data(), full);
    }
  }

  CheckSweepValues(c);
  ScenarioConfig& scenario = c.experiment.scenario;
  for (std::string* path : {&c.operator_site_file, &c.ap_site_file}) {
    if (!path->empty() && fs::path(*path).is_relative()) {
      *path = (fs::path(base_dir) / *path).lexically_normal().string();
    }
  }
  if (!c.operator_site_file.empty()) {
    const SiteIngestResult sites =
        LoadSites(c.operator_site_file, SiteKind::kOperatorCell, c);
    scenario.operator_sites = sites.positions;
    c.operator_sites_rejected = sites.rejected_outside;
  }
  if (!c.ap_site_file.empty()) {
    const SiteIngestResult sites = LoadSites(c.ap_site_file, SiteKind::kWifiAp, c);
    scenario.ap_sites = sites.positions;
    c.ap_sites_rejected = sites.rejected_outside;
  }
  scenario.Validate();
  c.experiment.channel.Validate();
  c.experiment.solver.Validate();
  c.experiment.economics.Validate();
  return c;
}

RunConfig ParseConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const fs::path parent = fs::absolute(fs::path(path)).parent_path();
  return ParseConfigString(buffer.str(), path, parent.string());
}

std::string EchoConfig(const RunConfig& config) {
  std::string out;
  std::string section;
  for (const Key& key : Keys()) {
    const std::optional<std::string> value = key.get(config);
    if (!value) continue;
    if (key.section != section) {
      if (!section.empty()) out += "\n";
      section = key.section;
      out += "[" + section + "]\n";
    }
    out += key.name + " = " + *value + "\n";
  }
  return out;
}

}  // namespace offload::tools
