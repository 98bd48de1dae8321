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

#ifndef OFFLOAD_TOOLS_CONFIG_H_
#define OFFLOAD_TOOLS_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>

#include "offload/experiments.h"
#include "offload/site_file.h"

namespace offload::tools {

// Everything one invocation needs. Site files are read while parsing, so the
// positions are already inside `experiment.scenario`.
struct RunConfig {
  ExperimentConfig experiment;
  SweepSpec sweep;
  CompareSpec compare;
  uint64_t base_seed = 1;
  int drops = 10;  // for `run`
  std::string output_dir = "out";

  std::string operator_site_file;  // absolute, empty when unused
  std::string ap_site_file;
  std::optional<LatLon> site_origin;
  int operator_sites_rejected = 0;
  int ap_sites_rejected = 0;
};

// INI text with sections [experiment] [scenario] [channel] [solver]
// [economics] [sweep] [compare]. Comments go on their own line ('#' or ';').
// Relative site-file paths resolve against `base_dir`. Throws ParseError for
// syntax errors and unknown keys and ConfigError for out-of-range values.
RunConfig ParseConfigString(const std::string& text,
                            const std::string& source_name,
                            const std::string& base_dir);
RunConfig ParseConfigFile(const std::string& path);

// Every key with its resolved value; parsing the echo yields the same
// config.
std::string EchoConfig(const RunConfig& config);

}  // namespace offload::tools

#endif  // OFFLOAD_TOOLS_CONFIG_H_
