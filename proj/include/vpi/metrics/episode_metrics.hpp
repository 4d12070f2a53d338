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

#ifndef VPI__METRICS__EPISODE_METRICS_HPP_
#define VPI__METRICS__EPISODE_METRICS_HPP_

#include "vpi/core/types.hpp"
#include "vpi/intent/decision.hpp"
#include "vpi/perception/trajectory.hpp"
#include "vpi/sim/episode.hpp"
#include "vpi/sim/geometry.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>

namespace vpi::metrics
{

struct MetricsConfig
{
  double dt{0.05};
  int ttc_window{5};
  double conflict_ttc{2.0};
  double collision_dist{0.5};
  double trigger_dist{15.0};
  double speed_tolerance{0.10};     // fraction of nominal speed
  double baseline_window{65.0};     // m before the junction exit, no-pedestrian runs
};

/// First tick at which inference would have been triggered (d below the activation distance
/// inside the junction region), or, when that never happens, the first tick whose vehicle x
/// reaches junction exit minus the baseline window.
std::optional<std::int64_t> trigger_tick(
  std::span<const perception::TrajectorySample> trajectory, const sim::Geometry & geometry,
  const MetricsConfig & config = {});

/// (egress tick - trigger tick) * dt for Egress, nullopt otherwise.
std::optional<double> traversal_time(
  std::span<const perception::TrajectorySample> trajectory, sim::Termination termination,
  const sim::Geometry & geometry, const MetricsConfig & config = {});

/// True iff every speed sample in the span lies within +-tolerance of nominal.
bool speed_maintained(
  std::span<const perception::TrajectorySample> samples, double nominal_speed,
  double tolerance = 0.10);

/// Termination read back from a log: collision if the last gap is below the collision distance,
/// egress if the vehicle passed the exit, timeout otherwise.
sim::Termination infer_termination(
  std::span<const perception::TrajectorySample> trajectory, const sim::Geometry & geometry,
  const MetricsConfig & config = {});

/// Everything that can be recomputed from a trajectory log alone.
struct LogMetrics
{
  sim::Termination termination{sim::Termination::Timeout};
  std::int64_t final_tick{0};
  double min_ttc{0.0};  // +inf when never defined
  bool conflict{false};
  bool collision{false};
  double min_separation{0.0};
  std::optional<std::int64_t> trigger_tick;
  std::optional<double> traversal_time;
  bool speed_maintained{false};

  bool operator==(const LogMetrics &) const = default;
};

/// Metrics over a log. Callers pass the serialised (3-decimal) log so that replays reproduce
/// the stored values exactly.
LogMetrics compute_log_metrics(
  std::span<const perception::TrajectorySample> trajectory, sim::Termination termination,
  const sim::Geometry & geometry, const MetricsConfig & config = {});

struct EpisodeResult
{
  std::string scenario_id;
  std::string mode;
  std::string backend;
  std::string complexity;
  std::optional<double> alpha_override;
  core::IntentClass truth_intent{core::IntentClass::NonYielding};
  core::Demographic truth_demographic{core::Demographic::Adult};
  bool has_pedestrian{true};
  /// Intent the episode acted on: Non-Yielding if any decision was Non-Yielding, Yielding if the
  /// backend was consulted without firing, absent when inference never ran.
  std::optional<core::IntentClass> predicted_intent;
  std::optional<core::Demographic> predicted_demographic;
  std::size_t braking_events{0};
  bool fallback_used{false};
  double nominal_speed{0.0};
  LogMetrics log;

  bool operator==(const EpisodeResult &) const = default;
};

nlohmann::json to_json(const LogMetrics & m);
LogMetrics log_metrics_from_json(const nlohmann::json & j);
nlohmann::json to_json(const EpisodeResult & r);
EpisodeResult episode_result_from_json(const nlohmann::json & j);

/// Canonical text form: sorted keys, two-space indent, trailing newline.
std::string canonical_dump(const nlohmann::json & j);

}  // namespace vpi::metrics

#endif  // VPI__METRICS__EPISODE_METRICS_HPP_
