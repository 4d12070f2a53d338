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

#include "vpi/core/world.hpp"

#include <cmath>
#include <string>

namespace vpi::core
{

void SimConstants::validate() const
{
  const auto positive = [](double v, const char * name) {
    if (!(std::isfinite(v) && v > 0.0)) {
      throw ContractViolation(std::string("SimConstants.") + name + " must be positive");
    }
  };
  positive(dt, "dt");
  positive(control_rate, "control_rate");
  positive(g, "g");
  positive(inference_trigger_dist, "inference_trigger_dist");
  positive(base_brake_dist, "base_brake_dist");
  positive(conflict_ttc, "conflict_ttc");
  positive(collision_dist, "collision_dist");
  if (!(std::isfinite(bumper_offset) && bumper_offset >= 0.0)) {
    throw ContractViolation("SimConstants.bumper_offset must be non-negative");
  }
  if (std::abs(dt * control_rate - 1.0) > 1e-12) {
    throw ContractViolation("SimConstants: dt * control_rate must equal 1");
  }
}

Vec2 bumper_point(const Vec2 & vehicle_pos, const Vec2 & heading, double bumper_offset)
{
  if (std::abs(heading.norm() - 1.0) > 1e-9) {
    throw ContractViolation("bumper_point: heading must have unit norm");
  }
  return vehicle_pos + heading * bumper_offset;
}

double separation(const Vec2 & bumper, const Vec2 & pedestrian) noexcept
{
  return distance(bumper, pedestrian);
}

WorldState WorldState::make(
  std::int64_t tick, double dt, const Vec2 & vehicle_pos, const Vec2 & vehicle_vel,
  const Vec2 & pedestrian_pos, const Vec2 & pedestrian_vel, const Vec2 & heading,
  double bumper_offset)
{
  if (tick < 0) {
    throw ContractViolation("WorldState: tick must be non-negative");
  }
  if (!(std::isfinite(dt) && dt > 0.0)) {
    throw ContractViolation("WorldState: dt must be positive");
  }
  WorldState s;
  s.tick_ = tick;
  s.time_ = static_cast<double>(tick) * dt;
  s.vehicle_pos_ = vehicle_pos;
  s.vehicle_vel_ = vehicle_vel;
  s.pedestrian_pos_ = pedestrian_pos;
  s.pedestrian_vel_ = pedestrian_vel;
  s.bumper_ = bumper_point(vehicle_pos, heading, bumper_offset);
  s.separation_ = core::separation(s.bumper_, pedestrian_pos);
  return s;
}

}  // namespace vpi::core
