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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "offload/errors.h"

namespace offload::tools {
namespace {

namespace fs = std::filesystem;

const std::string kConfigs = std::string(OFFLOAD_SOURCE_DIR) + "/configs/";

RunConfig Parse(const std::string& text) {
  return ParseConfigString(text, "test.cfg", ".");
}

TEST(ConfigTest, EmptyTextGivesDefaults) {
  const RunConfig c = Parse("");
  EXPECT_EQ(c.base_seed, 1u);
  EXPECT_EQ(c.drops, 10);
  EXPECT_EQ(c.experiment.scenario.micro_cells, 17);
  EXPECT_EQ(c.experiment.scenario.adoption_rate, 0.05);
  EXPECT_EQ(c.experiment.channel.candidates, 8);
  EXPECT_EQ(c.experiment.economics.price_femto, 0.0);
  EXPECT_EQ(c.sweep.variable, SweepVariable::kAdoptionRate);
}

TEST(ConfigTest, ReadsValues) {
  const RunConfig c = Parse(
      "# comment\n"
      "[scenario]\n"
      "environment = suburban\n"
      "femto_backhaul_caps_mbps = 5, 15\n"
      "[channel]\n"
      "coupling = split_spectrum\n"
      "[economics]\n"
      "price_femto = inf\n"
      "[sweep]\n"
      "variable = split_factor\n"
      "values = 1, 2\n");
  EXPECT_EQ(c.experiment.scenario.environment, Environment::kSuburban);
  EXPECT_EQ(c.experiment.scenario.femto_backhaul_caps_bps,
            (std::vector<double>{5e6, 15e6}));
  EXPECT_EQ(c.experiment.coupling, Coupling::kSplitSpectrum);
  EXPECT_TRUE(std::isinf(c.experiment.economics.price_femto));
  EXPECT_EQ(c.sweep.variable, SweepVariable::kSplitFactor);
  EXPECT_EQ(c.sweep.values, (std::vector<double>{1, 2}));
}

TEST(ConfigTest, OutOfRangeNamesKeyAndRange) {
  try {
    Parse("[scenario]\nadoption_rate = 1.5\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("scenario.adoption_rate = 1.5 is out "
                                         "of range [0, 1]"),
              std::string::npos)
        << e.what();
  }
  EXPECT_THROW(Parse("[economics]\nprice_femto = -1\n"), ConfigError);
  EXPECT_THROW(Parse("[channel]\ncandidates = 0\n"), ConfigError);
  EXPECT_THROW(Parse("[sweep]\nvariable = adoption_rate\nvalues = 0.1, 2\n"),
               ConfigError);
}

TEST(ConfigTest, UnknownKeysAndBadSyntax) {
  try {
    Parse("[scenario]\nadoption = 0.1\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("scenario.adoption"),
              std::string::npos);
  }
  EXPECT_THROW(Parse("[nonsense]\nx = 1\n"), ParseError);
  EXPECT_THROW(Parse("[scenario]\nmicro_cells = many\n"), ParseError);
  EXPECT_THROW(Parse("[scenario\n"), ParseError);
  EXPECT_THROW(Parse("[channel]\ncoupling = sideways\n"), ConfigError);
}

TEST(ConfigTest, EchoRoundTrips) {
  for (const char* name :
       {"urban_micro.cfg", "suburban_macro.cfg", "toy_oracle.cfg"}) {
    const RunConfig c = ParseConfigFile(kConfigs + name);
    const std::string echo = EchoConfig(c);
    EXPECT_EQ(EchoConfig(Parse(echo)), echo) << name;
  }
}

TEST(ConfigTest, ShippedConfigs) {
  const RunConfig urban = ParseConfigFile(kConfigs + "urban_micro.cfg");
  EXPECT_EQ(urban.experiment.scenario.micro_cells, 17);
  EXPECT_EQ(urban.experiment.scenario.ap_count, 36100);
  EXPECT_EQ(urban.sweep.values,
            (std::vector<double>{0, 0.02, 0.05, 0.10, 0.15, 0.20}));
  const RunConfig sub = ParseConfigFile(kConfigs + "suburban_macro.cfg");
  EXPECT_EQ(sub.experiment.scenario.environment, Environment::kSuburban);
  EXPECT_EQ(sub.experiment.scenario.macro_sites, 3);
  const RunConfig toy = ParseConfigFile(kConfigs + "toy_oracle.cfg");
  EXPECT_EQ(toy.base_seed, 77u);
  EXPECT_EQ(toy.experiment.scenario.ue_count, 3);
}

TEST(ConfigTest, SiteFilesResolveAgainstConfigDir) {
  const fs::path dir = fs::temp_directory_path() / "offload_config_test";
  fs::create_directories(dir / "sites");
  {
    std::ofstream(dir / "sites" / "cells.csv")
        << "id,kind,x_m,y_m\na,cell,0,0\nb,cell,100,-50\nc,cell,900,0\n";
    std::ofstream(dir / "run.cfg")
        << "[scenario]\noperator_site_file = sites/cells.csv\n";
  }
  const RunConfig c = ParseConfigFile((dir / "run.cfg").string());
  ASSERT_TRUE(c.experiment.scenario.operator_sites.has_value());
  EXPECT_EQ(c.experiment.scenario.operator_sites->size(), 2u);
  EXPECT_EQ(c.operator_sites_rejected, 1);
  EXPECT_TRUE(fs::path(c.operator_site_file).is_absolute());
  EXPECT_THROW(ParseConfigString("[scenario]\nap_site_file = missing.csv\n",
                                 "x.cfg", dir.string()),
               ConfigError);
  fs::remove_all(dir);
}

TEST(ConfigTest, MissingFile) {
  EXPECT_THROW(ParseConfigFile("/nonexistent/x.cfg"), ConfigError);
}

}  // namespace
}  // namespace offload::tools
