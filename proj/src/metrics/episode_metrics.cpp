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

#include "vpi/metrics/episode_metrics.hpp"

#include "vpi/metrics/ttc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vpi::metrics
{

namespace
{

double speed_of(const perception::TrajectorySample & s)
{
  return std::hypot(s.v_veh_x, s.v_veh_y);
}

std::optional<std::size_t> index_of_frame(
  std::span<const perception::TrajectorySample> trajectory, std::int64_t frame)
{
  if (trajectory.empty()) {
    return std::nullopt;
  }
  const auto offset = frame - trajectory.front().frame;
  if (offset < 0 || static_cast<std::size_t>(offset) >= trajectory.size()) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(offset);
}

}  // namespace

std::optional<std::int64_t> trigger_tick(
  std::span<const perception::TrajectorySample> trajectory, const sim::Geometry & geometry,
  const MetricsConfig & config)
{
  for (const auto & s : trajectory) {
    if (s.d < config.trigger_dist && sim::is_junction({s.x_veh, s.y_veh}, geometry)) {
      return s.frame;
    }
  }
  const double start_x = geometry.junction_exit_x - config.baseline_window;
  for (const auto & s : trajectory) {
    if (s.x_veh >= start_x) {
      return s.frame;
    }
  }
  return std::nullopt;
}

std::optional<double> traversal_time(
  std::span<const perception::TrajectorySample> trajectory, sim::Termination termination,
  const sim::Geometry & geometry, const MetricsConfig & config)
{
  if (termination != sim::Termination::Egress || trajectory.empty()) {
    return std::nullopt;
  }
  const auto start = trigger_tick(trajectory, geometry, config);
  if (!start) {
    return std::nullopt;
  }
  return static_cast<double>(trajectory.back().frame - *start) * config.dt;
}

bool speed_maintained(
  std::span<const perception::TrajectorySample> samples, double nominal_speed, double tolerance)
{
  if (!(nominal_speed > 0.0)) {
    throw core::ContractViolation("speed_maintained: nominal speed must be positive");
  }
  const double lo = (1.0 - tolerance) * nominal_speed;
  const double hi = (1.0 + tolerance) * nominal_speed;
  return std::all_of(samples.begin(), samples.end(), [&](const auto & s) {
    const double v = speed_of(s);
    return v >= lo && v <= hi;
  });
}

sim::Termination infer_termination(
  std::span<const perception::TrajectorySample> trajectory, const sim::Geometry & geometry,
  const MetricsConfig & config)
{
  if (trajectory.empty()) {
    throw std::invalid_argument("infer_termination: empty trajectory");
  }
  const auto & last = trajectory.back();
  if (last.d < config.collision_dist) {
    return sim::Termination::Collision;
  }
  if (last.x_veh > geometry.junction_exit_x) {
    return sim::Termination::Egress;
  }
  return sim::Termination::Timeout;
}

LogMetrics compute_log_metrics(
  std::span<const perception::TrajectorySample> trajectory, sim::Termination termination,
  const sim::Geometry & geometry, const MetricsConfig & config)
{
  if (trajectory.empty()) {
    throw std::invalid_argument("compute_log_metrics: empty trajectory");
  }
  LogMetrics m;
  m.termination = termination;
  m.final_tick = trajectory.back().frame;
  const auto stream = ttc_stream(trajectory, config.ttc_window, config.dt);
  m.min_ttc = episode_min_ttc(stream);
  m.collision = termination == sim::Termination::Collision;
  m.conflict = is_conflict(m.min_ttc, config.conflict_ttc);
  m.min_separation = std::numeric_limits<double>::infinity();
  for (const auto & s : trajectory) {
    m.min_separation = std::min(m.min_separation, s.d);
  }
  m.trigger_tick = trigger_tick(trajectory, geometry, config);
  m.traversal_time = traversal_time(trajectory, termination, geometry, config);

  const double nominal = speed_of(trajectory.front());
  if (nominal > 0.0) {
    std::size_t from = 0;
    if (m.trigger_tick) {
      from = index_of_frame(trajectory, *m.trigger_tick).value_or(0);
    }
    m.speed_maintained = termination == sim::Termination::Egress &&
                         speed_maintained(trajectory.subspan(from), nominal, config.speed_tolerance);
  }
  return m;
}

namespace
{

nlohmann::json optional_number(const std::optional<double> & v)
{
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::optional<double> read_optional_number(const nlohmann::json & j, const char * key)
{
  const auto & v = j.at(key);
  if (v.is_null()) {
    return std::nullopt;
  }
  return v.get<double>();
}

template <typename Enum, typename Parser>
Enum parse_or_throw(const nlohmann::json & j, const char * key, Parser parser)
{
  const auto text = j.at(key).get<std::string>();
  const auto value = parser(text);
  if (!value) {
    throw std::invalid_argument(std::string("unrecognised value for ") + key + ": " + text);
  }
  return *value;
}

}  // namespace

nlohmann::json to_json(const LogMetrics & m)
{
  nlohmann::json j;
  j["termination"] = std::string(sim::to_string(m.termination));
  j["final_tick"] = m.final_tick;
  j["min_ttc"] = std::isfinite(m.min_ttc) ? nlohmann::json(m.min_ttc) : nlohmann::json(nullptr);
  j["conflict"] = m.conflict;
  j["collision"] = m.collision;
  j["min_separation"] = m.min_separation;
  j["trigger_tick"] = m.trigger_tick ? nlohmann::json(*m.trigger_tick) : nlohmann::json(nullptr);
  j["traversal_time"] = optional_number(m.traversal_time);
  j["speed_maintained"] = m.speed_maintained;
  return j;
}

LogMetrics log_metrics_from_json(const nlohmann::json & j)
{
  LogMetrics m;
  m.termination = parse_or_throw<sim::Termination>(j, "termination", sim::parse_termination);
  m.final_tick = j.at("final_tick").get<std::int64_t>();
  m.min_ttc = read_optional_number(j, "min_ttc").value_or(kInfiniteTtc);
  m.conflict = j.at("conflict").get<bool>();
  m.collision = j.at("collision").get<bool>();
  m.min_separation = j.at("min_separation").get<double>();
  if (!j.at("trigger_tick").is_null()) {
    m.trigger_tick = j.at("trigger_tick").get<std::int64_t>();
  }
  m.traversal_time = read_optional_number(j, "traversal_time");
  m.speed_maintained = j.at("speed_maintained").get<bool>();
  return m;
}

nlohmann::json to_json(const EpisodeResult & r)
{
  nlohmann::json j;
  j["scenario_id"] = r.scenario_id;
  j["mode"] = r.mode;
  j["backend"] = r.backend;
  j["complexity"] = r.complexity;
  j["alpha_override"] = optional_number(r.alpha_override);
  j["truth_intent"] = std::string(core::to_string(r.truth_intent));
  j["truth_demographic"] = std::string(core::to_string(r.truth_demographic));
  j["has_pedestrian"] = r.has_pedestrian;
  j["predicted_intent"] = r.predicted_intent
                            ? nlohmann::json(std::string(core::to_string(*r.predicted_intent)))
                            : nlohmann::json(nullptr);
  j["predicted_demographic"] =
    r.predicted_demographic
      ? nlohmann::json(std::string(core::to_string(*r.predicted_demographic)))
      : nlohmann::json(nullptr);
  j["braking_events"] = r.braking_events;
  j["fallback_used"] = r.fallback_used;
  j["nominal_speed"] = r.nominal_speed;
  j["metrics"] = to_json(r.log);
  return j;
}

EpisodeResult episode_result_from_json(const nlohmann::json & j)
{
  EpisodeResult r;
  r.scenario_id = j.at("scenario_id").get<std::string>();
  r.mode = j.at("mode").get<std::string>();
  r.backend = j.at("backend").get<std::string>();
  r.complexity = j.at("complexity").get<std::string>();
  r.alpha_override = read_optional_number(j, "alpha_override");
  r.truth_intent = parse_or_throw<core::IntentClass>(j, "truth_intent", core::parse_intent);
  r.truth_demographic =
    parse_or_throw<core::Demographic>(j, "truth_demographic", core::parse_demographic);
  r.has_pedestrian = j.at("has_pedestrian").get<bool>();
  if (!j.at("predicted_intent").is_null()) {
    r.predicted_intent =
      parse_or_throw<core::IntentClass>(j, "predicted_intent", core::parse_intent);
  }
  if (!j.at("predicted_demographic").is_null()) {
    r.predicted_demographic =
      parse_or_throw<core::Demographic>(j, "predicted_demographic", core::parse_demographic);
  }
  r.braking_events = j.at("braking_events").get<std::size_t>();
  r.fallback_used = j.at("fallback_used").get<bool>();
  r.nominal_speed = j.at("nominal_speed").get<double>();
  r.log = log_metrics_from_json(j.at("metrics"));
  return r;
}

std::string canonical_dump(const nlohmann::json & j) { return j.dump(2) + "\n"; }

}  // namespace vpi::metrics
