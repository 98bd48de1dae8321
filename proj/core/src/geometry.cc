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

#include "offload/geometry.h"

#include <cmath>
#include <numbers>

namespace offload {

bool Area::Contains(Position p) const {
  return p.x >= 0.0 && p.x < width_m && p.y >= 0.0 && p.y < height_m;
}

Position Area::Displacement(Position from, Position to) const {
  double dx = to.x - from.x;
  double dy = to.y - from.y;
  if (!wrap_around) return {dx, dy};
  if (shear_m == 0.0) {
    dx -= width_m * std::nearbyint(dx / width_m);
    dy -= height_m * std::nearbyint(dy / height_m);
    return {dx, dy};
  }
  // Sheared torus: enumerate a few vertical periods, wrap x exactly for each.
  const long j0 = std::lround(dy / height_m);
  const long span = 1 + static_cast<long>(std::ceil(width_m / (2.0 * height_m)));
  Position best{dx, dy};
  double best_d2 = INFINITY;
  for (long j = j0 - span; j <= j0 + span; ++j) {
    const double cy = dy - j * height_m;
    double cx = dx - j * shear_m;
    cx -= width_m * std::nearbyint(cx / width_m);
    const double d2 = cx * cx + cy * cy;
    if (d2 < best_d2) {
      best_d2 = d2;
      best = {cx, cy};
    }
  }
  return best;
}

double Area::Distance(Position a, Position b) const {
  const Position d = Displacement(a, b);
  return std::hypot(d.x, d.y);
}

double BearingDeg(Position d) {
  return WrapDeg(std::atan2(d.y, d.x) * 180.0 / std::numbers::pi);
}

double WrapDeg(double angle_deg) {
  double a = std::fmod(angle_deg, 360.0);
  if (a <= -180.0) a += 360.0;
  if (a > 180.0) a -= 360.0;
  return a;
}

}  // namespace offload
