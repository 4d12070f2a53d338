// Copyright 2026 The vpisim Authors
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

#ifndef VPI__SIM__GEOMETRY_HPP_
#define VPI__SIM__GEOMETRY_HPP_

#include "vpi/core/vec2.hpp"

#include <vector>

namespace vpi::sim
{

/// Straight single-lane junction. The lane runs along +x at y = lane_center_y; the pedestrian
/// crosses along y at x = crosswalk_x.
struct Geometry
{
  double crosswalk_x{0.0};
  double junction_entry_x{0.0};
  double junction_exit_x{50.0};
  double approach_margin{20.0};
  double lane_center_y{0.0};
  double lane_half_width{1.75};
  double sidewalk_y{6.0};  // |y - lane_center_y| of the curb line

  void validate() const;
  bool operator==(const Geometry &) const = default;
};

/// True iff vehicle x lies in [junction_entry_x - approach_margin, junction_exit_x].
bool is_junction(const core::Vec2 & vehicle_pos, const Geometry & geometry) noexcept;

/// Planned vehicle path: the lane centre line as a two-point polyline spanning well past the
/// junction on both sides.
std::vector<core::Vec2> lane_path(const Geometry & geometry);

/// Unit heading of the lane (+x).
core::Vec2 lane_heading() noexcept;

}  // namespace vpi::sim

#endif  // VPI__SIM__GEOMETRY_HPP_
