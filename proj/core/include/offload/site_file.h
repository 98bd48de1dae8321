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

#ifndef OFFLOAD_SITE_FILE_H_
#define OFFLOAD_SITE_FILE_H_

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "offload/geometry.h"

namespace offload {

enum class SiteKind { kOperatorCell, kWifiAp };

struct LatLon {
  double lat_deg = 0.0;
  double lon_deg = 0.0;
};

struct SiteIngestOptions {
  // Area the sites must fall into; positions are centered on it, so the
  // accepted range is |x| < width/2, |y| < height/2.
  double area_width_m = 1000.0;
  double area_height_m = 1000.0;
  // Projection origin for lat/lon files. Defaults to the centroid of all
  // coordinate rows in the file.
  std::optional<LatLon> origin;
};

struct SiteIngestResult {
  std::vector<Position> positions;  // local meters, area center at (0, 0)
  int rejected_outside = 0;
  bool projected = false;
  LatLon origin;  // when projected
};

// CSV with header "id,kind,lat,lon" or "id,kind,x_m,y_m"; kind is "cell" or
// "ap"; lines starting with '#' are comments. Rows of the other kind are
// skipped. Throws ParseError ("source:line: reason") on malformed input and
// on files without any data row.
SiteIngestResult ParseSites(std::istream& in, SiteKind kind,
                            const SiteIngestOptions& options,
                            const std::string& source_name);
SiteIngestResult IngestSites(const std::string& path, SiteKind kind,
                             const SiteIngestOptions& options);

// Equirectangular projection about `origin`, meters east / north.
Position ProjectEquirectangular(LatLon point, LatLon origin);

}  // namespace offload

#endif  // OFFLOAD_SITE_FILE_H_
