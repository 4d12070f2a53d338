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

#ifndef VPI__SIM__EPISODE_HPP_
#define VPI__SIM__EPISODE_HPP_

#include "vpi/control/safety_controller.hpp"
#include "vpi/core/types.hpp"
#include "vpi/core/world.hpp"
#include "vpi/intent/decision.hpp"
#include "vpi/perception/trajectory.hpp"
#include "vpi/sim/geometry.hpp"
#include "vpi/sim/pedestrian.hpp"
#include "vpi/sim/vehicle.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vpi::sim
{

struct ScenarioSpec
{
  std::string id;
  double vehicle_speed{7.0};      // m/s, autopilot target and initial speed
  double vehicle_start_x{-80.0};  // m, vehicle reference point
  /// Absent for traversal baselines: no pedestrian is placed near the road.
  std::optional<PedestrianScript> pedestrian;
  core::Demographic demographic{core::Demographic::Adult};
  Geometry geometry;
  std::uint64_t seed{0};
  std::string complexity{"clear"};

  /// Ground truth of the script; Yielding when there is no pedestrian.
  core::IntentClass ground_truth() const noexcept;
  void validate() const;
  bool operator==(const ScenarioSpec &) const = default;
};

enum class Termination { Egress, Collision, Timeout };
std::string_view to_string(Termination termination) noexcept;
std::optional<Termination> parse_termination(std::string_view text);

enum class EventTag { Trigger, Decision, Emergency, TierChange, Resume, Rearm };
std::string_view to_string(EventTag tag) noexcept;

struct EpisodeEvent
{
  std::int64_t tick{0};
  EventTag tag{EventTag::Trigger};
  std::string detail;

  bool operator==(const EpisodeEvent &) const = default;
};

struct EpisodeOutcome
{
  Termination termination{Termination::Timeout};
  std::int64_t final_tick{0};
  perception::TrajectoryLog trajectory;
  std::vector<EpisodeEvent> events;
  std::vector<intent::IntentDecision> decisions;

  std::size_t emergency_count() const noexcept;
  bool fallback_used() const noexcept;
};

/// Raised when the classifier could not be reached after its retries. The partial trajectory
/// is kept for diagnostics; the episode counts as neither egress nor collision.
class EpisodeAborted : public std::runtime_error
{
public:
  EpisodeAborted(std::string scenario_id, std::int64_t tick, std::string detail);

  const std::string & scenario_id() const noexcept { return scenario_id_; }
  std::int64_t tick() const noexcept { return tick_; }

private:
  std::string scenario_id_;
  std::int64_t tick_;
};

struct EpisodeConfig
{
  core::SimConstants constants;
  VehicleParams vehicle;
  control::ControllerConfig controller;
  double timeout{60.0};  // s

  void validate() const;
};

/// Off-road parking spot used when a scenario has no pedestrian.
core::Vec2 parked_pedestrian_position(const Geometry & geometry);

/// Runs one closed-loop episode at the control rate until egress, collision or timeout.
/// Output is a pure function of the scenario, the configuration and the backend's answers.
EpisodeOutcome run_episode(
  const ScenarioSpec & scenario, const intent::IntentBackend & backend,
  const EpisodeConfig & config = {});

}  // namespace vpi::sim

#endif  // VPI__SIM__EPISODE_HPP_
