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

#include "vpi/sim/pedestrian.hpp"

#include <cmath>
#include <string>

namespace vpi::sim
{

namespace
{

constexpr double kFalseStartStep = 0.5;   // m past the curb
constexpr double kFalseStartPause = 0.5;  // s

}  // namespace

std::string_view to_string(PedestrianKind kind) noexcept
{
  switch (kind) {
    case PedestrianKind::NonYieldCross:
      return "NonYieldCross";
    case PedestrianKind::YieldStopAtCurb:
      return "YieldStopAtCurb";
    case PedestrianKind::HesitateThenCross:
      return "HesitateThenCross";
    case PedestrianKind::FalseStart:
      return "FalseStart";
    case PedestrianKind::ReverseMidCross:
      return "ReverseMidCross";
  }
  return "NonYieldCross";
}

std::optional<PedestrianKind> parse_pedestrian_kind(std::string_view text)
{
  for (const auto kind :
       {PedestrianKind::NonYieldCross, PedestrianKind::YieldStopAtCurb,
        PedestrianKind::HesitateThenCross, PedestrianKind::FalseStart,
        PedestrianKind::ReverseMidCross}) {
    if (to_string(kind) == text) {
      return kind;
    }
  }
  return std::nullopt;
}

core::IntentClass ground_truth_intent(PedestrianKind kind) noexcept
{
  switch (kind) {
    case PedestrianKind::NonYieldCross:
    case PedestrianKind::HesitateThenCross:
      return core::IntentClass::NonYielding;
    case PedestrianKind::YieldStopAtCurb:
    case PedestrianKind::FalseStart:
    case PedestrianKind::ReverseMidCross:
      return core::IntentClass::Yielding;
  }
  return core::IntentClass::NonYielding;
}

std::string_view to_string(MotionPhase phase) noexcept
{
  switch (phase) {
    case MotionPhase::Waiting:
      return "waiting";
    case MotionPhase::Walking:
      return "walking";
    case MotionPhase::Pausing:
      return "pausing";
    case MotionPhase::Stopped:
      return "stopped";
  }
  return "stopped";
}

void PedestrianScript::validate(const Geometry & geometry) const
{
  if (!(walk_speed >= 0.5 && walk_speed <= 4.0)) {
    throw core::ContractViolation(
      "PedestrianScript: walk_speed must lie in [0.5, 4.0] m/s, got " +
      std::to_string(walk_speed));
  }
  if (direction != 1 && direction != -1) {
    throw core::ContractViolation("PedestrianScript: direction must be +1 or -1");
  }
  if (!(std::isfinite(pause_duration) && pause_duration >= 0.0)) {
    throw core::ContractViolation("PedestrianScript: pause_duration must be non-negative");
  }
  if (!(std::isfinite(start_delay) && start_delay >= 0.0)) {
    throw core::ContractViolation("PedestrianScript: start_delay must be non-negative");
  }
  if (!std::isfinite(start_y)) {
    throw core::ContractViolation("PedestrianScript: start_y must be finite");
  }
  // Start on the near side, at or behind the curb.
  const double signed_offset = direction * (start_y - geometry.lane_center_y);
  if (signed_offset > -geometry.sidewalk_y + 1e-9) {
    throw core::ContractViolation(
      "PedestrianScript: start_y must be on the near sidewalk for the given direction");
  }
}

PedestrianMotion::PedestrianMotion(const PedestrianScript & script, const Geometry & geometry)
: x_(geometry.crosswalk_x)
{
  script.validate(geometry);
  const double d = script.direction;
  const double center = geometry.lane_center_y;
  const double near_curb = center - d * geometry.sidewalk_y;
  const double far_curb = center + d * geometry.sidewalk_y;
  const double v = script.walk_speed;

  double t = 0.0;
  double y = script.start_y;
  push_hold(t, y, script.start_delay, MotionPhase::Waiting);
  switch (script.kind) {
    case PedestrianKind::NonYieldCross:
      push_walk(t, y, far_curb, v);
      break;
    case PedestrianKind::YieldStopAtCurb:
      push_walk(t, y, near_curb, v);
      break;
    case PedestrianKind::HesitateThenCross:
      push_walk(t, y, near_curb, v);
      push_hold(t, y, script.pause_duration, MotionPhase::Pausing);
      push_walk(t, y, far_curb, v);
      break;
    case PedestrianKind::FalseStart:
      push_walk(t, y, near_curb + d * kFalseStartStep, v);
      push_hold(t, y, kFalseStartPause, MotionPhase::Pausing);
      push_walk(t, y, near_curb, v);
      break;
    case PedestrianKind::ReverseMidCross:
      push_walk(t, y, center, v);
      push_walk(t, y, near_curb, v);
      break;
  }
  final_y_ = y;
}

void PedestrianMotion::push_walk(double & t, double & y, double target_y, double speed)
{
  const double length = std::abs(target_y - y);
  if (length <= 0.0) {
    return;
  }
  const double duration = length / speed;
  const double vy = target_y > y ? speed : -speed;
  segments_.push_back({t, t + duration, y, vy, MotionPhase::Walking});
  t += duration;
  y = target_y;
}

void PedestrianMotion::push_hold(double & t, double y, double duration, MotionPhase phase)
{
  if (duration <= 0.0) {
    return;
  }
  segments_.push_back({t, t + duration, y, 0.0, phase});
  t += duration;
}

PedestrianState PedestrianMotion::at(double elapsed) const
{
  const double t = elapsed < 0.0 ? 0.0 : elapsed;
  for (const auto & seg : segments_) {
    if (t >= seg.t0 && t < seg.t1) {
      return {core::Vec2{x_, seg.y0 + seg.vy * (t - seg.t0)}, core::Vec2{0.0, seg.vy}, seg.phase};
    }
  }
  return {core::Vec2{x_, final_y_}, core::Vec2{0.0, 0.0}, MotionPhase::Stopped};
}

double PedestrianMotion::settle_time() const noexcept
{
  return segments_.empty() ? 0.0 : segments_.back().t1;
}

PedestrianState pedestrian_step(
  const PedestrianScript & script, const Geometry & geometry, double elapsed)
{
  return PedestrianMotion(script, geometry).at(elapsed);
}

}  // namespace vpi::sim
