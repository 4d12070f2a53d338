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

#include "vpi/sim/episode.hpp"

#include "vpi/core/rng.hpp"
#include "vpi/perception/scene_description.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace vpi::sim
{

namespace
{
constexpr std::uint64_t kInferenceStream = 0x1f3d;
constexpr double kParkedOffset = 1000.0;
}  // namespace

core::IntentClass ScenarioSpec::ground_truth() const noexcept
{
  return pedestrian ? ground_truth_intent(pedestrian->kind) : core::IntentClass::Yielding;
}

void ScenarioSpec::validate() const
{
  if (id.empty()) {
    throw core::ContractViolation("ScenarioSpec: id must not be empty");
  }
  if (!std::isfinite(vehicle_speed) || !(vehicle_speed > 0.0) || vehicle_speed > 40.0) {
    throw core::ContractViolation("ScenarioSpec: vehicle_speed must lie in (0, 40] m/s");
  }
  geometry.validate();
  if (!std::isfinite(vehicle_start_x) || vehicle_start_x >= geometry.junction_exit_x) {
    throw core::ContractViolation("ScenarioSpec: vehicle must start before the junction exit");
  }
  if (pedestrian) {
    pedestrian->validate(geometry);
  }
}

std::string_view to_string(Termination termination) noexcept
{
  switch (termination) {
    case Termination::Egress:
      return "Egress";
    case Termination::Collision:
      return "Collision";
    case Termination::Timeout:
      return "Timeout";
  }
  return "Timeout";
}

std::optional<Termination> parse_termination(std::string_view text)
{
  for (const auto t : {Termination::Egress, Termination::Collision, Termination::Timeout}) {
    if (to_string(t) == text) {
      return t;
    }
  }
  return std::nullopt;
}

std::string_view to_string(EventTag tag) noexcept
{
  switch (tag) {
    case EventTag::Trigger:
      return "trigger";
    case EventTag::Decision:
      return "decision";
    case EventTag::Emergency:
      return "emergency";
    case EventTag::TierChange:
      return "tier";
    case EventTag::Resume:
      return "resume";
    case EventTag::Rearm:
      return "rearm";
  }
  return "trigger";
}

std::size_t EpisodeOutcome::emergency_count() const noexcept
{
  return static_cast<std::size_t>(std::count_if(events.begin(), events.end(), [](const auto & e) {
    return e.tag == EventTag::Emergency;
  }));
}

bool EpisodeOutcome::fallback_used() const noexcept
{
  return std::any_of(
    decisions.begin(), decisions.end(), [](const auto & d) { return d.fallback_used; });
}

EpisodeAborted::EpisodeAborted(std::string scenario_id, std::int64_t tick, std::string detail)
: std::runtime_error(
    fmt::format("episode {} aborted at tick {}: {}", scenario_id, tick, detail)),
  scenario_id_(std::move(scenario_id)),
  tick_(tick)
{
}

void EpisodeConfig::validate() const
{
  constants.validate();
  if (!(timeout > 0.0) || !std::isfinite(timeout)) {
    throw core::ContractViolation("EpisodeConfig: timeout must be positive");
  }
  if (vehicle.actuator_lag < 0.0 || !(vehicle.max_accel > 0.0) || !(vehicle.g > 0.0)) {
    throw core::ContractViolation("EpisodeConfig: invalid vehicle parameters");
  }
}

core::Vec2 parked_pedestrian_position(const Geometry & geometry)
{
  return {geometry.crosswalk_x, geometry.lane_center_y - kParkedOffset};
}

namespace
{

/// First-order lag on the signed longitudinal input (throttle positive, brake negative).
ControlCommand apply_lag(const ControlCommand & target, const ControlCommand & applied, double dt, double lag)
{
  if (lag <= 0.0) {
    return target;
  }
  const double k = dt / (lag + dt);
  const double u_prev = applied.throttle - applied.brake;
  const double u_target = target.throttle - target.brake;
  const double u = u_prev + k * (u_target - u_prev);
  ControlCommand out;
  out.throttle = std::clamp(u, 0.0, 1.0);
  out.brake = std::clamp(-u, 0.0, 1.0);
  out.steer = target.steer;
  return out;
}

}  // namespace

EpisodeOutcome run_episode(
  const ScenarioSpec & scenario, const intent::IntentBackend & backend,
  const EpisodeConfig & config)
{
  scenario.validate();
  config.validate();

  const auto & k = config.constants;
  const auto & geometry = scenario.geometry;
  const auto heading = lane_heading();
  const auto path = lane_path(geometry);
  const auto policy = config.controller.policy();
  const auto & resume_params = config.controller.resume;

  std::optional<PedestrianMotion> motion;
  if (scenario.pedestrian) {
    motion.emplace(*scenario.pedestrian, geometry);
  }

  EpisodeOutcome outcome;
  perception::TrajectoryBuffer buffer;
  control::ControllerState ctrl;
  VehicleKinematics vehicle{{scenario.vehicle_start_x, geometry.lane_center_y}, {scenario.vehicle_speed, 0.0}};
  ControlCommand applied;
  std::optional<core::Vec2> prev_ped;
  constexpr std::size_t kNoBand = static_cast<std::size_t>(-1);
  std::size_t last_band = kNoBand;
  bool armed = true;
  std::uint64_t inference_index = 0;

  const auto event = [&](std::int64_t tick, EventTag tag, std::string detail) {
    outcome.events.push_back({tick, tag, std::move(detail)});
  };

  for (std::int64_t tick = 0;; ++tick) {
    const double now = static_cast<double>(tick) * k.dt;

    PedestrianState ped;
    if (motion) {
      ped = motion->at(now);
    } else {
      ped.pos = parked_pedestrian_position(geometry);
      ped.phase = MotionPhase::Stopped;
    }
    const core::Vec2 ped_vel =
      prev_ped ? perception::estimate_ped_velocity(ped.pos, *prev_ped, k.dt) : core::Vec2{};
    const auto world = core::WorldState::make(
      tick, k.dt, vehicle.pos, vehicle.vel, ped.pos, ped_vel, heading, k.bumper_offset);
    buffer.append(perception::make_sample(world, prev_ped, k.dt));
    prev_ped = ped.pos;

    const double d = world.separation();
    if (d < k.collision_dist) {
      outcome.termination = Termination::Collision;
      outcome.final_tick = tick;
      break;
    }
    if (vehicle.pos.x() > geometry.junction_exit_x) {
      outcome.termination = Termination::Egress;
      outcome.final_tick = tick;
      break;
    }
    if (now >= config.timeout - 1e-9) {
      outcome.termination = Termination::Timeout;
      outcome.final_tick = tick;
      break;
    }

    ctrl = control::update_stop_time(ctrl, world, resume_params);
    if (ctrl.mode == control::ControlMode::Emergency) {
      const auto flags = control::resume_check(world, ctrl, now, path, resume_params);
      if (control::should_resume(flags, control::approach_speed(world, path), resume_params)) {
        ctrl = control::resume(ctrl);
        buffer.reset_trigger();
        armed = false;
        last_band = kNoBand;
        event(
          tick, EventTag::Resume,
          fmt::format(
            "{}{}{}", flags.spatial ? "spatial " : "", flags.temporal ? "temporal " : "",
            flags.behavioral ? "behavioral" : ""));
      }
    } else if (!armed) {
      // Re-arm once the situation that justified the resume no longer holds.
      auto probe = ctrl;
      probe.mode = control::ControlMode::Emergency;
      probe.t_stop.reset();
      const auto flags = control::resume_check(world, probe, now, path, resume_params);
      if (d >= k.inference_trigger_dist ||
          !control::should_resume(flags, control::approach_speed(world, path), resume_params)) {
        armed = true;
        event(tick, EventTag::Rearm, "");
      }
    }

    if (armed && ctrl.mode == control::ControlMode::Autopilot) {
      bool classify = false;
      if (perception::check_trigger(d, vehicle.pos, buffer, geometry, k.inference_trigger_dist)) {
        buffer.latch_trigger();
        event(tick, EventTag::Trigger, fmt::format("d={:.3f}", d));
        classify = true;
      } else if (
        buffer.has_triggered() && backend.evaluates_every_tick() &&
        ped.pos.x() >= world.bumper().x()) {
        classify = true;
      }
      if (classify) {
        intent::InferenceContext context;
        context.buffer = &buffer;
        context.scenario_demographic = scenario.demographic;
        context.ground_truth_intent = scenario.ground_truth();
        context.episode_seed = core::derive_seed(scenario.seed, kInferenceStream, inference_index++);
        if (backend.tag() == intent::BackendTag::Llm) {
          perception::SceneFacts facts;
          facts.demographic = scenario.demographic;
          facts.kind = scenario.pedestrian ? scenario.pedestrian->kind : PedestrianKind::YieldStopAtCurb;
          facts.phase = ped.phase;
          facts.pedestrian_pos = ped.pos;
          facts.pedestrian_vel = ped_vel;
          facts.vehicle_pos = vehicle.pos;
          facts.direction = scenario.pedestrian ? scenario.pedestrian->direction : 1;
          facts.geometry = geometry;
          context.scene_description = perception::synthesize_scene_description(facts);
        }
        auto decision = backend.classify(context);
        if (decision.fallback_used && decision.fallback_reason == intent::FallbackReason::Transport) {
          throw EpisodeAborted(scenario.id, tick, decision.reason);
        }
        // Threshold detectors are polled silently until they fire.
        const bool log_decision =
          !backend.evaluates_every_tick() || decision.intent == core::IntentClass::NonYielding;
        if (log_decision) {
          event(
            tick, EventTag::Decision,
            fmt::format(
              "{}/{}{}", core::to_string(decision.intent), core::to_string(decision.demographic),
              decision.fallback_used ? " fallback" : ""));
          outcome.decisions.push_back(decision);
        }
        const auto before = ctrl.mode;
        ctrl = control::on_decision(decision, ctrl, config.controller);
        if (before != ctrl.mode) {
          event(tick, EventTag::Emergency, fmt::format("alpha={:.2f}", ctrl.alpha));
        }
      }
    }

    const auto nominal = autopilot(world.vehicle_speed(), scenario.vehicle_speed, config.vehicle.autopilot_gain);
    const auto cmd = control::control_step(world, ctrl, nominal, policy);
    if (ctrl.mode == control::ControlMode::Emergency) {
      const auto tier = policy.select(d, ctrl.alpha);
      if (last_band != tier.band) {
        event(
          tick, EventTag::TierChange,
          tier.coast ? std::string("coast") : fmt::format("{:.1f}g", tier.decel_g));
        last_band = tier.band;
      }
    }
    ctrl.last_steer = cmd.steer;

    applied = apply_lag(cmd, applied, k.dt, config.vehicle.actuator_lag);
    vehicle = vehicle_step(vehicle, applied, k.dt, config.vehicle);
  }

  outcome.trajectory.assign(buffer.samples().begin(), buffer.samples().end());
  return outcome;
}

}  // namespace vpi::sim
