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

#include "vpi/sim/vehicle.hpp"

#include <algorithm>
#include <cmath>

namespace vpi::sim
{

void ControlCommand::validate() const
{
  if (!(throttle >= 0.0 && throttle <= 1.0) || !(brake >= 0.0 && brake <= 1.0)) {
    throw core::ContractViolation("ControlCommand: throttle and brake must lie in [0, 1]");
  }
  if (throttle * brake != 0.0) {
    throw core::ContractViolation("ControlCommand: throttle and brake are mutually exclusive");
  }
  if (!std::isfinite(steer)) {
    throw core::ContractViolation("ControlCommand: steer must be finite");
  }
}

VehicleKinematics vehicle_step(
  const VehicleKinematics & state, const ControlCommand & cmd, double dt,
  const VehicleParams & params)
{
  cmd.validate();
  const double v0 = std::max(0.0, state.vel.x());
  const double accel = cmd.throttle * params.max_accel - cmd.brake * params.g;
  double v1 = v0 + accel * dt;
  double travelled = 0.0;
  if (v1 < 0.0) {
    // Comes to rest inside the step: integrate only up to the stopping instant.
    const double t_stop = v0 / -accel;
    travelled = 0.5 * v0 * t_stop;
    v1 = 0.0;
  } else {
    travelled = 0.5 * (v0 + v1) * dt;
  }
  return {state.pos + core::Vec2{travelled, 0.0}, core::Vec2{v1, 0.0}};
}

ControlCommand autopilot(double speed, double target_speed, double gain)
{
  if (!(target_speed > 0.0)) {
    throw core::ContractViolation("autopilot: target_speed must be positive");
  }
  const double error = target_speed - speed;
  ControlCommand cmd;
  cmd.throttle = std::clamp(gain * error, 0.0, 1.0);
  cmd.brake = std::clamp(-gain * error, 0.0, 1.0);
  return cmd;
}

}  // namespace vpi::sim
