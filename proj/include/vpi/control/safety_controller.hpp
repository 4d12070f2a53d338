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

#ifndef VPI__CONTROL__SAFETY_CONTROLLER_HPP_
#define VPI__CONTROL__SAFETY_CONTROLLER_HPP_

#include "vpi/control/tier_policy.hpp"
#include "vpi/core/types.hpp"
#include "vpi/core/world.hpp"
#include "vpi/intent/decision.hpp"
#include "vpi/sim/vehicle.hpp"

#include <optional>
#include <span>
#include <string_view>

namespace vpi::control
{

enum class ControlMode { Autopilot, Emergency };
std::string_view to_string(ControlMode mode) noexcept;

/// RuleBaseline: one 1.0 g band below the base distance. Uniform: tiered with the multiplier
/// pinned to 1. Adaptive: tiered with the demographic multiplier.
enum class ControllerKind { RuleBaseline, Uniform, Adaptive };
std::string_view to_string(ControllerKind kind) noexcept;
std::optional<ControllerKind> parse_controller_kind(std::string_view text);

struct ControllerState
{
  ControlMode mode{ControlMode::Autopilot};
  double alpha{1.0};
  std::optional<double> t_stop;
  double last_steer{0.0};
};

struct ResumeParams
{
  double clearance_factor{3.5};  // m per unit multiplier, lateral exit of the corridor
  double standoff_factor{5.0};   // m per unit multiplier, gap required after a full stop
  double stop_speed{0.1};        // m/s
  double stop_dwell{2.0};        // s
  double retreat_speed{0.5};     // m/s away from the path
};

struct ControllerConfig
{
  ControllerKind kind{ControllerKind::Adaptive};
  /// Replaces the demographic multiplier in Adaptive mode (sensitivity sweeps).
  std::optional<double> alpha_override;
  ResumeParams resume;
  double base_brake_dist{9.35};

  TierPolicy policy() const;
  double alpha_for(core::Demographic demographic) const;
};

/// Mode transition on a classification. Non-Yielding enters Emergency with the multiplier of
/// the reported demographic; Yielding leaves the state untouched.
ControllerState on_decision(
  const intent::IntentDecision & decision, const ControllerState & state,
  const ControllerConfig & config = {});

/// Closest point of a polyline to `point`. Throws ContractViolation on an empty path.
core::Vec2 closest_point_on_path(const core::Vec2 & point, std::span<const core::Vec2> path);
double perpendicular_distance(const core::Vec2 & point, std::span<const core::Vec2> path);

struct ResumeFlags
{
  bool spatial{false};
  bool temporal{false};
  bool behavioral{false};

  bool any() const noexcept { return spatial || temporal || behavioral; }
  bool operator==(const ResumeFlags &) const = default;
};

/// Evaluates the three resume conditions. Requires Emergency mode. Threshold comparisons are
/// strict and treat values within 1e-9 of the threshold as not exceeding it.
ResumeFlags resume_check(
  const core::WorldState & world, const ControllerState & state, double now,
  std::span<const core::Vec2> path, const ResumeParams & params = {});

/// Pedestrian speed toward the path, positive when closing. Zero on the path itself.
double approach_speed(const core::WorldState & world, std::span<const core::Vec2> path);

/// Resume gate used by the closed loop. Spatial clearance only counts once the pedestrian is no
/// longer walking toward the path faster than the retreat threshold.
bool should_resume(const ResumeFlags & flags, double approach_speed, const ResumeParams & params = {});

/// Records the first time the vehicle is at rest while in Emergency.
ControllerState update_stop_time(
  const ControllerState & state, const core::WorldState & world, const ResumeParams & params = {});

/// Autopilot again with the stop time cleared; the caller clears the trigger latch.
ControllerState resume(const ControllerState & state);

/// Autopilot passes the nominal command through. Emergency brakes per tier with zero throttle
/// and the last steering value.
sim::ControlCommand control_step(
  const core::WorldState & world, const ControllerState & state,
  const sim::ControlCommand & autopilot_cmd, const TierPolicy & policy = TierPolicy::tiered());

}  // namespace vpi::control

#endif  // VPI__CONTROL__SAFETY_CONTROLLER_HPP_
