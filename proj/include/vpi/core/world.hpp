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

#ifndef VPI__CORE__WORLD_HPP_
#define VPI__CORE__WORLD_HPP_

#include "vpi/core/vec2.hpp"

#include <cstdint>

namespace vpi::core
{

struct SimConstants
{
  double dt{0.05};                      // s
  double control_rate{20.0};            // Hz
  double g{9.81};                       // m/s^2
  double inference_trigger_dist{15.0};  // m
  double base_brake_dist{9.35};         // m
  double conflict_ttc{2.0};             // s
  double collision_dist{0.5};           // m
  double bumper_offset{2.0};            // m ahead of the vehicle reference point

  /// Throws ContractViolation unless dt * control_rate == 1 and every distance/rate is positive.
  void validate() const;
};

/// Vehicle front reference point. `heading` must be a unit vector (within 1e-9).
Vec2 bumper_point(const Vec2 & vehicle_pos, const Vec2 & heading, double bumper_offset);

/// Euclidean bumper-to-pedestrian distance.
double separation(const Vec2 & bumper, const Vec2 & pedestrian) noexcept;

/// Kinematic snapshot of the vehicle and the single pedestrian at one control tick.
class WorldState
{
public:
  static WorldState make(
    std::int64_t tick, double dt, const Vec2 & vehicle_pos, const Vec2 & vehicle_vel,
    const Vec2 & pedestrian_pos, const Vec2 & pedestrian_vel, const Vec2 & heading,
    double bumper_offset);

  std::int64_t tick() const noexcept { return tick_; }
  double time() const noexcept { return time_; }
  const Vec2 & vehicle_pos() const noexcept { return vehicle_pos_; }
  const Vec2 & vehicle_vel() const noexcept { return vehicle_vel_; }
  const Vec2 & pedestrian_pos() const noexcept { return pedestrian_pos_; }
  const Vec2 & pedestrian_vel() const noexcept { return pedestrian_vel_; }
  const Vec2 & bumper() const noexcept { return bumper_; }
  double separation() const noexcept { return separation_; }
  double vehicle_speed() const noexcept { return vehicle_vel_.norm(); }

private:
  WorldState() = default;

  std::int64_t tick_{0};
  double time_{0.0};
  Vec2 vehicle_pos_;
  Vec2 vehicle_vel_;
  Vec2 pedestrian_pos_;
  Vec2 pedestrian_vel_;
  Vec2 bumper_;
  double separation_{0.0};
};

}  // namespace vpi::core

#endif  // VPI__CORE__WORLD_HPP_
