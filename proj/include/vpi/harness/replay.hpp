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

#ifndef VPI__HARNESS__REPLAY_HPP_
#define VPI__HARNESS__REPLAY_HPP_

#include "vpi/metrics/episode_metrics.hpp"
#include "vpi/perception/trajectory.hpp"
#include "vpi/sim/geometry.hpp"

#include <filesystem>
#include <optional>
#include <span>

namespace vpi::harness
{

/// Largest accepted |d - separation(positions)| in a persisted log; covers 3-decimal rounding.
inline constexpr double kReplaySeparationTolerance = 2e-3;

/// Throws CsvSchemaError naming the first row whose d disagrees with its positions.
void validate_separation(
  std::span<const perception::TrajectorySample> log, double bumper_offset,
  double tolerance = kReplaySeparationTolerance);

struct ReplayReport
{
  metrics::LogMetrics recomputed;
  std::optional<metrics::LogMetrics> stored;
  /// True when no stored metrics exist or they are identical in canonical JSON.
  bool matches{true};
};

/// Recomputes metrics from a trajectory CSV. When a result.json sits next to the log, its
/// scenario geometry and termination are used and its stored metrics are compared.
ReplayReport replay_trajectory(
  const std::filesystem::path & csv_path, const metrics::MetricsConfig & config = {},
  double bumper_offset = 2.0, const sim::Geometry & fallback_geometry = {});

}  // namespace vpi::harness

#endif  // VPI__HARNESS__REPLAY_HPP_
