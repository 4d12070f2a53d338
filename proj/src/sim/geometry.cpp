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

#include "vpi/sim/geometry.hpp"

#include <cmath>

namespace vpi::sim
{

void Geometry::validate() const
{
  for (const double v : {crosswalk_x, junction_entry_x, junction_exit_x, approach_margin,
                         lane_center_y, lane_half_width, sidewalk_y}) {
    if (!std::isfinite(v)) {
      throw core::ContractViolation("Geometry: all fields must be finite");
    }
  }
  if (!(junction_exit_x > junction_entry_x)) {
    throw core::ContractViolation("Geometry: junction_exit_x must exceed junction_entry_x");
  }
  if (!(approach_margin >= 0.0)) {
    throw core::ContractViolation("Geometry: approach_margin must be non-negative");
  }
  if (!(lane_half_width > 0.0 && sidewalk_y > lane_half_width)) {
    throw core::ContractViolation("Geometry: sidewalk_y must exceed lane_half_width > 0");
  }
}

bool is_junction(const core::Vec2 & vehicle_pos, const Geometry & geometry) noexcept
{
  const double x = vehicle_pos.x();
  return x >= geometry.junction_entry_x - geometry.approach_margin &&
         x <= geometry.junction_exit_x;
}

std::vector<core::Vec2> lane_path(const Geometry & geometry)
{
  constexpr double kReach = 1000.0;
  return {
    core::Vec2{geometry.junction_entry_x - geometry.approach_margin - kReach,
               geometry.lane_center_y},
    core::Vec2{geometry.junction_exit_x + kReach, geometry.lane_center_y}};
}

core::Vec2 lane_heading() noexcept { return core::Vec2{1.0, 0.0}; }

}  // namespace vpi::sim
