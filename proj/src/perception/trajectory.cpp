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

#include "vpi/perception/trajectory.hpp"

#include <fmt/format.h>

#include <cmath>
#include <cstdlib>

namespace vpi::perception
{

core::Vec2 estimate_ped_velocity(const core::Vec2 & curr, const core::Vec2 & prev, double dt)
{
  if (!(dt > 0.0)) {
    throw core::ContractViolation("estimate_ped_velocity: dt must be positive");
  }
  return {(curr.x() - prev.x()) / dt, (curr.y() - prev.y()) / dt};
}

TrajectorySample make_sample(
  const core::WorldState & world, const std::optional<core::Vec2> & prev_ped_pos, double dt)
{
  const core::Vec2 ped_vel = prev_ped_pos
                               ? estimate_ped_velocity(world.pedestrian_pos(), *prev_ped_pos, dt)
                               : core::Vec2{0.0, 0.0};
  TrajectorySample s;
  s.frame = world.tick();
  s.x_veh = world.vehicle_pos().x();
  s.y_veh = world.vehicle_pos().y();
  s.v_veh_x = world.vehicle_vel().x();
  s.v_veh_y = world.vehicle_vel().y();
  s.x_ped = world.pedestrian_pos().x();
  s.y_ped = world.pedestrian_pos().y();
  s.v_ped_x = ped_vel.x();
  s.v_ped_y = ped_vel.y();
  s.d = world.separation();
  return s;
}

void TrajectoryBuffer::append(const TrajectorySample & sample)
{
  if (!samples_.empty() && sample.frame != samples_.back().frame + 1) {
    throw core::ContractViolation(
      fmt::format(
        "TrajectoryBuffer: frame {} does not follow frame {}", sample.frame,
        samples_.back().frame));
  }
  if (!(sample.d >= 0.0)) {
    throw core::ContractViolation("TrajectoryBuffer: d must be non-negative");
  }
  samples_.push_back(sample);
}

const TrajectorySample & TrajectoryBuffer::latest() const
{
  if (samples_.empty()) {
    throw core::ContractViolation("TrajectoryBuffer: buffer is empty");
  }
  return samples_.back();
}

bool check_trigger(
  double d, const core::Vec2 & vehicle_pos, const TrajectoryBuffer & buffer,
  const sim::Geometry & geometry, double trigger_dist)
{
  return d < trigger_dist && sim::is_junction(vehicle_pos, geometry) && !buffer.has_triggered();
}

core::Vec2 sample_bumper(const TrajectorySample & sample, double bumper_offset)
{
  return core::bumper_point({sample.x_veh, sample.y_veh}, sim::lane_heading(), bumper_offset);
}

double separation_residual(const TrajectorySample & sample, double bumper_offset)
{
  const auto bumper = sample_bumper(sample, bumper_offset);
  return std::abs(sample.d - core::separation(bumper, {sample.x_ped, sample.y_ped}));
}

std::string format_fixed3(double value)
{
  auto text = fmt::format("{:.3f}", value);
  if (text == "-0.000") {
    text = "0.000";
  }
  return text;
}

double quantize3(double value) { return std::strtod(format_fixed3(value).c_str(), nullptr); }

TrajectorySample quantized(const TrajectorySample & s)
{
  return {s.frame,
          quantize3(s.x_veh),
          quantize3(s.y_veh),
          quantize3(s.v_veh_x),
          quantize3(s.v_veh_y),
          quantize3(s.x_ped),
          quantize3(s.y_ped),
          quantize3(s.v_ped_x),
          quantize3(s.v_ped_y),
          quantize3(s.d)};
}

TrajectoryLog quantized(std::span<const TrajectorySample> samples)
{
  TrajectoryLog out;
  out.reserve(samples.size());
  for (const auto & s : samples) {
    out.push_back(quantized(s));
  }
  return out;
}

}  // namespace vpi::perception
