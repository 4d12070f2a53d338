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

#ifndef VPI__SIM__VEHICLE_HPP_
#define VPI__SIM__VEHICLE_HPP_

#include "vpi/core/vec2.hpp"

namespace vpi::sim
{

/// Normalised actuator command. Throttle and brake are never both non-zero.
struct ControlCommand
{
  double throttle{0.0};
  double brake{0.0};
  double steer{0.0};

  void validate() const;
  bool operator==(const ControlCommand &) const = default;
};

struct VehicleParams
{
  double max_accel{2.5};      // m/s^2 at full throttle
  double g{9.81};             // m/s^2 at full brake
  double actuator_lag{0.0};   // s, first-order lag on applied inputs; 0 disables it
  double autopilot_gain{0.5}; // s/m
};

struct VehicleKinematics
{
  core::Vec2 pos;
  core::Vec2 vel;
};

/// Longitudinal point-mass update along +x. Constant acceleration over the step with the
/// speed clamped at zero; the position integrates the clamped profile exactly.
VehicleKinematics vehicle_step(
  const VehicleKinematics & state, const ControlCommand & cmd, double dt,
  const VehicleParams & params = {});

/// Proportional speed hold standing in for the simulator's traffic manager.
ControlCommand autopilot(double speed, double target_speed, double gain = 0.5);

}  // namespace vpi::sim

#endif  // VPI__SIM__VEHICLE_HPP_
