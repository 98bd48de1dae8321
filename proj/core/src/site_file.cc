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

#include "offload/site_file.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string_view>

#include "offload/errors.h"

namespace offload {
namespace {

constexpr double kEarthRadiusM = 6371008.8;

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> SplitCsv(std::string_view line) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    const size_t comma = line.find(',', start);
    out.push_back(Trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

struct Row {
  int line = 0;
  SiteKind kind = SiteKind::kOperatorCell;
  double a = 0.0;  // lat or x
  double b = 0.0;  // lon or y
};

}  // namespace

Position ProjectEquirectangular(LatLon point, LatLon origin) {
  const double deg = std::numbers::pi / 180.0;
  return {kEarthRadiusM * (point.lon_deg - origin.lon_deg) * deg *
              std::cos(origin.lat_deg * deg),
          kEarthRadiusM * (point.lat_deg - origin.lat_deg) * deg};
}

SiteIngestResult ParseSites(std::istream& in, SiteKind kind,
                            const SiteIngestOptions& options,
                            const std::string& source_name) {
  auto fail = [&](int line, const std::string& why) -> ParseError {
    return ParseError(source_name + ":" + std::to_string(line) + ": " + why);
  };
  auto number = [&](std::string_view field, int line, const char* name) {
    double v = 0.0;
    const auto [ptr, ec] =
        std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size() ||
        !std::isfinite(v)) {
      throw fail(line, std::string("bad ") + name + " '" +
                           std::string(field) + "'");
    }
    return v;
  };

  std::string text;
  int line_no = 0;
  bool have_header = false;
  bool latlon = false;
  std::vector<Row> rows;
  while (std::getline(in, text)) {
    ++line_no;
    const std::string_view line = Trim(text);
    if (line.empty() || line.front() == '#') continue;
    const std::vector<std::string_view> f = SplitCsv(line);
    if (!have_header) {
      if (f.size() == 4 && f[0] == "id" && f[1] == "kind" && f[2] == "lat" &&
          f[3] == "lon") {
        latlon = true;
      } else if (f.size() == 4 && f[0] == "id" && f[1] == "kind" &&
                 f[2] == "x_m" && f[3] == "y_m") {
        latlon = false;
      } else {
        throw fail(line_no,
                   "expected header 'id,kind,lat,lon' or 'id,kind,x_m,y_m'");
      }
      have_header = true;
      continue;
    }
    if (f.size() != 4) {
      throw fail(line_no, "expected 4 fields, got " + std::to_string(f.size()));
    }
    if (f[0].empty()) throw fail(line_no, "empty id");
    Row row;
    row.line = line_no;
    if (f[1] == "cell") {
      row.kind = SiteKind::kOperatorCell;
    } else if (f[1] == "ap") {
      row.kind = SiteKind::kWifiAp;
    } else {
      throw fail(line_no, "kind must be 'cell' or 'ap', got '" +
                              std::string(f[1]) + "'");
    }
    row.a = number(f[2], line_no, latlon ? "lat" : "x_m");
    row.b = number(f[3], line_no, latlon ? "lon" : "y_m");
    if (latlon && std::abs(row.a) > 90.0) {
      throw fail(line_no, "latitude out of [-90, 90]");
    }
    if (latlon && std::abs(row.b) > 180.0) {
      throw fail(line_no, "longitude out of [-180, 180]");
    }
    rows.push_back(row);
  }
  if (rows.empty()) throw fail(line_no, "no site rows");

  SiteIngestResult result;
  result.projected = latlon;
  if (latlon) {
    if (options.origin) {
      result.origin = *options.origin;
    } else {
      for (const Row& r : rows) {
        result.origin.lat_deg += r.a / rows.size();
        result.origin.lon_deg += r.b / rows.size();
      }
    }
  }
  for (const Row& r : rows) {
    if (r.kind != kind) continue;
    const Position p = latlon
                           ? ProjectEquirectangular({r.a, r.b}, result.origin)
                           : Position{r.a, r.b};
    if (std::abs(p.x) >= 0.5 * options.area_width_m ||
        std::abs(p.y) >= 0.5 * options.area_height_m) {
      ++result.rejected_outside;
      continue;
    }
    result.positions.push_back(p);
  }
  return result;
}

SiteIngestResult IngestSites(const std::string& path, SiteKind kind,
                             const SiteIngestOptions& options) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open site file");
  return ParseSites(in, kind, options, path);
}

}  // namespace offload
