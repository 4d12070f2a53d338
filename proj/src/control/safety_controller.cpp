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

#include "vpi/control/safety_controller.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vpi::control
{

namespace
{

constexpr double kEps = 1e-9;

bool exceeds(double value, double threshold) { return value > threshold + kEps; }
bool below(double value, double threshold) { return value < threshold - kEps; }

}  // namespace

std::string_view to_string(ControlMode mode) noexcept
{
  return mode == ControlMode::Emergency ? "Emergency" : "Autopilot";
}

std::string_view to_string(ControllerKind kind) noexcept
{
  switch (kind) {
    case ControllerKind::RuleBaseline:
      return "baseline";
    case ControllerKind::Uniform:
      return "uniform";
    case ControllerKind::Adaptive:
      return "adaptive";
  }
  return "adaptive";
}

std::optional<ControllerKind> parse_controller_kind(std::string_view text)
{
  for (const auto k : {ControllerKind::RuleBaseline, ControllerKind::Uniform,
                       ControllerKind::Adaptive}) {
    if (to_string(k) == text) {
      return k;
    }
  }
  return std::nullopt;
}

TierPolicy ControllerConfig::policy() const
{
  return kind == ControllerKind::RuleBaseline ? TierPolicy::single_tier(base_brake_dist, 1.0)
                                              : TierPolicy::tiered(base_brake_dist);
}

double ControllerConfig::alpha_for(core::Demographic demographic) const
{
  if (kind != ControllerKind::Adaptive) {
    return 1.0;
  }
  if (alpha_override) {
    if (!(*alpha_override > 0.0) || !std::isfinite(*alpha_override)) {
      throw core::ContractViolation("multiplier override must be positive");
    }
    return *alpha_override;
  }
  return core::alpha_for(demographic);
}

ControllerState on_decision(
  const intent::IntentDecision & decision, const ControllerState & state,
  const ControllerConfig & config)
{
  if (decision.intent != core::IntentClass::NonYielding) {
    return state;
  }
  ControllerState next = state;
  next.mode = ControlMode::Emergency;
  next.alpha = config.alpha_for(decision.demographic);
  return next;
}

core::Vec2 closest_point_on_path(const core::Vec2 & point, std::span<const core::Vec2> path)
{
  if (path.empty()) {
    throw core::ContractViolation("path must contain at least one point");
  }
  core::Vec2 best = path.front();
  double best_d = core::distance(point, best);
  for (std::size_t i = 1; i < path.size(); ++i) {
    const core::Vec2 & a = path[i - 1];
    const core::Vec2 ab = path[i] - a;
    const double len2 = ab.dot(ab);
    double t = 0.0;
    if (len2 > 0.0) {
      t = std::clamp((point - a).dot(ab) / len2, 0.0, 1.0);
    }
    const core::Vec2 c = a + ab * t;
    const double d = core::distance(point, c);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

double perpendicular_distance(const core::Vec2 & point, std::span<const core::Vec2> path)
{
  return core::distance(point, closest_point_on_path(point, path));
}

ResumeFlags resume_check(
  const core::WorldState & world, const ControllerState & state, double now,
  std::span<const core::Vec2> path, const ResumeParams & params)
{
  if (state.mode != ControlMode::Emergency) {
    throw core::ContractViolation("resume_check requires Emergency mode");
  }
  ResumeFlags flags;
  const core::Vec2 & ped = world.pedestrian_pos();
  const core::Vec2 foot = closest_point_on_path(ped, path);
  const double lateral = core::distance(ped, foot);

  flags.spatial = exceeds(lateral, params.clearance_factor * state.alpha);

  flags.temporal = below(world.vehicle_speed(), params.stop_speed) && state.t_stop.has_value() &&
                   exceeds(now - *state.t_stop, params.stop_dwell) &&
                   exceeds(world.separation(), params.standoff_factor * state.alpha);

  if (lateral > 0.0) {
    const core::Vec2 away = (ped - foot) * (1.0 / lateral);
    flags.behavioral = exceeds(world.pedestrian_vel().dot(away), params.retreat_speed);
  }
  return flags;
}

double approach_speed(const core::WorldState & world, std::span<const core::Vec2> path)
{
  const core::Vec2 & ped = world.pedestrian_pos();
  const core::Vec2 foot = closest_point_on_path(ped, path);
  const double lateral = core::distance(ped, foot);
  if (lateral <= 0.0) {
    return 0.0;
  }
  return -world.pedestrian_vel().dot((ped - foot) * (1.0 / lateral));
}

bool should_resume(const ResumeFlags & flags, double approach, const ResumeParams & params)
{
  return flags.temporal || flags.behavioral ||
         (flags.spatial && !exceeds(approach, params.retreat_speed));
}

ControllerState update_stop_time(
  const ControllerState & state, const core::WorldState & world, const ResumeParams & params)
{
  if (state.mode != ControlMode::Emergency || state.t_stop.has_value() ||
      !below(world.vehicle_speed(), params.stop_speed)) {
    return state;
  }
  ControllerState next = state;
  next.t_stop = world.time();
  return next;
}

ControllerState resume(const ControllerState & state)
{
  ControllerState next = state;
  next.mode = ControlMode::Autopilot;
  next.t_stop.reset();
  return next;
}

sim::ControlCommand control_step(
  const core::WorldState & world, const ControllerState & state,
  const sim::ControlCommand & autopilot_cmd, const TierPolicy & policy)
{
  if (state.mode == ControlMode::Autopilot) {
    return autopilot_cmd;
  }
  const auto tier = policy.select(world.separation(), state.alpha);
  sim::ControlCommand cmd;
  cmd.throttle = 0.0;
  cmd.brake = brake_input(tier.decel_g);
  cmd.steer = state.last_steer;
  return cmd;
}

}  // namespace vpi::control
