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

#ifndef VPI__HARNESS__RUNNER_HPP_
#define VPI__HARNESS__RUNNER_HPP_

#include "vpi/harness/suite.hpp"
#include "vpi/metrics/aggregate.hpp"
#include "vpi/metrics/episode_metrics.hpp"
#include "vpi/sim/episode.hpp"

#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vpi::harness
{

/// One (scenario, controller) execution unit.
struct RunTask
{
  sim::ScenarioSpec spec;
  control::ControllerKind mode{control::ControllerKind::Adaptive};
  std::optional<double> alpha_override;
  /// Directory label under the suite directory, e.g. "adaptive" or "sweep-alpha-1.40".
  std::string label;
};

struct RunOptions
{
  std::filesystem::path suite_dir;
  int parallel{1};
  /// Reuse episodes whose artifacts already exist and validate.
  bool resume{true};
  sim::EpisodeConfig episode;
  metrics::MetricsConfig metrics;
};

struct SuiteRun
{
  /// One slot per task in task order; empty for tasks that never ran.
  std::vector<std::optional<metrics::EpisodeResult>> slots;
  std::size_t executed{0};
  std::size_t reused{0};
  std::optional<std::string> abort_reason;
  std::vector<std::string> invariant_violations;

  std::vector<metrics::EpisodeResult> results() const;
  bool complete() const noexcept;
  bool ok() const noexcept { return complete() && invariant_violations.empty(); }
};

/// Backend for a tiered run plus the rule detector for the baseline mode.
struct BackendSet
{
  std::shared_ptr<const intent::IntentBackend> primary;
  std::shared_ptr<const intent::IntentBackend> rule;

  const intent::IntentBackend & for_mode(control::ControllerKind mode) const;
};

/// Builds the configured backend. The LLM backend validates its endpoint and exemplars here,
/// so configuration errors surface before any episode starts.
BackendSet make_backends(const SuiteConfig & config);

std::string backend_label(const BackendSet & backends, control::ControllerKind mode);

std::vector<RunTask> make_tasks(
  std::span<const sim::ScenarioSpec> specs, std::span<const control::ControllerKind> modes,
  std::optional<double> alpha_override = std::nullopt);

/// Tasks of the multiplier sweep: Adaptive mode with each override over child scenarios.
std::vector<RunTask> make_sweep_tasks(
  std::span<const sim::ScenarioSpec> specs, std::span<const double> alphas);

std::filesystem::path episode_dir(const std::filesystem::path & suite_dir, const RunTask & task);

/// Runs one task and returns its result and the serialised (3-decimal) trajectory.
struct EpisodeArtifacts
{
  metrics::EpisodeResult result;
  perception::TrajectoryLog trajectory;
};
EpisodeArtifacts execute_task(
  const RunTask & task, const BackendSet & backends, const RunOptions & options);

/// Checks result/trajectory consistency; returns human-readable violations.
std::vector<std::string> check_invariants(
  const metrics::EpisodeResult & result, std::span<const perception::TrajectorySample> trajectory,
  const metrics::MetricsConfig & config = {});

/// Executes every task with up to `parallel` episodes in flight. Per-episode files are written
/// as soon as an episode finishes. A transport failure stops new work and is reported in
/// `abort_reason`; completed episodes stay on disk.
SuiteRun run_tasks(
  std::span<const RunTask> tasks, const BackendSet & backends, const RunOptions & options);

/// Loads the stored result of a task if both artifacts exist and agree; nullopt otherwise.
std::optional<metrics::EpisodeResult> load_existing(
  const RunTask & task, const RunOptions & options);

}  // namespace vpi::harness

#endif  // VPI__HARNESS__RUNNER_HPP_
