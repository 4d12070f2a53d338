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

#ifndef VPI__SIM__PEDESTRIAN_HPP_
#define VPI__SIM__PEDESTRIAN_HPP_

#include "vpi/core/types.hpp"
#include "vpi/core/vec2.hpp"
#include "vpi/sim/geometry.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace vpi::sim
{

enum class PedestrianKind {
  NonYieldCross,      // walks across to the far curb
  YieldStopAtCurb,    // walks to the near curb and waits there
  HesitateThenCross,  // pauses at the near curb, then crosses
  FalseStart,         // steps 0.5 m past the curb, pauses, retreats to the curb
  ReverseMidCross,    // walks to the lane centre, turns back to the near curb
};

std::string_view to_string(PedestrianKind kind) noexcept;
std::optional<PedestrianKind> parse_pedestrian_kind(std::string_view text);

/// Outcome-based label of each script.
core::IntentClass ground_truth_intent(PedestrianKind kind) noexcept;

enum class MotionPhase { Waiting, Walking, Pausing, Stopped };

std::string_view to_string(MotionPhase phase) noexcept;

struct PedestrianScript
{
  PedestrianKind kind{PedestrianKind::NonYieldCross};
  double walk_speed{2.0};      // m/s, in [0.5, 4.0]
  double pause_duration{1.0};  // s, HesitateThenCross only
  double start_y{-8.0};        // m, on the near side, at or behind the curb
  int direction{+1};           // +1 walks toward +y
  double start_delay{0.0};     // s spent standing at start_y before the script begins

  /// Throws ContractViolation on out-of-range speed, bad direction or a start point on the
  /// wrong side of the road.
  void validate(const Geometry & geometry) const;
  bool operator==(const PedestrianScript &) const = default;
};

struct PedestrianState
{
  core::Vec2 pos;
  core::Vec2 vel;
  MotionPhase phase{MotionPhase::Waiting};
};

/// Piecewise-constant-velocity trajectory of one script. Segments are half-open in time, so at
/// a breakpoint the state reports the velocity of the segment that starts there.
class PedestrianMotion
{
public:
  PedestrianMotion(const PedestrianScript & script, const Geometry & geometry);

  PedestrianState at(double elapsed) const;

  /// Time at which the final segment ends and the pedestrian stops for good.
  double settle_time() const noexcept;

private:
  struct Segment
  {
    double t0;
    double t1;
    double y0;
    double vy;
    MotionPhase phase;
  };

  void push_walk(double & t, double & y, double target_y, double speed);
  void push_hold(double & t, double y, double duration, MotionPhase phase);

  double x_{0.0};
  std::vector<Segment> segments_;
  double final_y_{0.0};
};

/// Closed-form pedestrian state `elapsed` seconds after episode start.
PedestrianState pedestrian_step(
  const PedestrianScript & script, const Geometry & geometry, double elapsed);

}  // namespace vpi::sim

#endif  // VPI__SIM__PEDESTRIAN_HPP_
