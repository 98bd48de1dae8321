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

#ifndef OFFLOAD_GEOMETRY_H_
#define OFFLOAD_GEOMETRY_H_

namespace offload {

struct Position {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Position&, const Position&) = default;
};

// Rectangular simulation area [0, width) x [0, height). With wrap_around the
// area is a torus generated by the periods (width, 0) and (shear, height).
// The shear is zero except for hexagonal layouts with an odd number of rows,
// where it keeps the lattice regular across the seam.
struct Area {
  double width_m = 1000.0;
  double height_m = 1000.0;
  bool wrap_around = true;
  double shear_m = 0.0;

  bool Contains(Position p) const;

  // Vector from `from` to the nearest image of `to`.
  Position Displacement(Position from, Position to) const;
  double Distance(Position a, Position b) const;
};

// Bearing of `d` in degrees, 0 along +x, counter-clockwise, in (-180, 180].
double BearingDeg(Position d);

// Wraps an angle in degrees to (-180, 180].
double WrapDeg(double angle_deg);

}  // namespace offload

#endif  // OFFLOAD_GEOMETRY_H_
