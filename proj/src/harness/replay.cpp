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

#include "vpi/harness/replay.hpp"

#include "vpi/harness/scenario_io.hpp"
#include "vpi/perception/trajectory_csv.hpp"

#include <fmt/format.h>

namespace vpi::harness
{

void validate_separation(
  std::span<const perception::TrajectorySample> log, double bumper_offset, double tolerance)
{
  for (std::size_t i = 0; i < log.size(); ++i) {
    const double residual = perception::separation_residual(log[i], bumper_offset);
    if (!(residual <= tolerance)) {
      throw perception::CsvSchemaError(
        i + 2, "d",
        fmt::format(
          "d={:.3f} differs from the bumper-to-pedestrian distance by {:.4f} m", log[i].d,
          residual));
    }
  }
}

ReplayReport replay_trajectory(
  const std::filesystem::path & csv_path, const metrics::MetricsConfig & config,
  double bumper_offset, const sim::Geometry & fallback_geometry)
{
  const auto log = perception::read_trajectory_csv(csv_path);
  validate_separation(log, bumper_offset);

  sim::Geometry geometry = fallback_geometry;
  std::optional<sim::Termination> termination;
  std::optional<nlohmann::json> stored_json;
  const auto result_path = csv_path.parent_path() / "result.json";
  if (std::filesystem::exists(result_path)) {
    const auto j = nlohmann::json::parse(read_text_file(result_path));
    if (j.contains("scenario")) {
      geometry = scenario_from_json(j.at("scenario")).geometry;
    }
    stored_json = j.at("metrics");
    termination = metrics::log_metrics_from_json(*stored_json).termination;
  }
  if (!termination) {
    termination = metrics::infer_termination(log, geometry, config);
  }

  ReplayReport report;
  report.recomputed = metrics::compute_log_metrics(log, *termination, geometry, config);
  if (stored_json) {
    report.stored = metrics::log_metrics_from_json(*stored_json);
    report.matches = metrics::canonical_dump(metrics::to_json(report.recomputed)) ==
                     metrics::canonical_dump(*stored_json);
  }
  return report;
}

}  // namespace vpi::harness
