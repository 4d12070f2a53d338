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

#include "vpi/harness/runner.hpp"

#include "vpi/harness/scenario_io.hpp"
#include "vpi/intent/exemplar.hpp"
#include "vpi/intent/rule_backend.hpp"
#include "vpi/perception/trajectory_csv.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <sstream>
#include <thread>

namespace vpi::harness
{

std::vector<metrics::EpisodeResult> SuiteRun::results() const
{
  std::vector<metrics::EpisodeResult> out;
  for (const auto & s : slots) {
    if (s) {
      out.push_back(*s);
    }
  }
  return out;
}

bool SuiteRun::complete() const noexcept
{
  if (abort_reason) {
    return false;
  }
  for (const auto & s : slots) {
    if (!s) {
      return false;
    }
  }
  return true;
}

const intent::IntentBackend & BackendSet::for_mode(control::ControllerKind mode) const
{
  return mode == control::ControllerKind::RuleBaseline ? *rule : *primary;
}

BackendSet make_backends(const SuiteConfig & config)
{
  BackendSet set;
  set.rule = std::make_shared<intent::RuleBackend>();
  switch (config.backend) {
    case intent::BackendTag::Rule:
      set.primary = set.rule;
      break;
    case intent::BackendTag::Oracle:
      set.primary = std::make_shared<intent::OracleBackend>(config.calibration);
      break;
    case intent::BackendTag::Llm: {
      if (config.exemplar_dir.empty()) {
        throw intent::ConfigError("the llm backend needs an exemplar_dir");
      }
      set.primary = std::make_shared<intent::LlmBackend>(
        intent::with_env_api_key(config.endpoint), intent::load_exemplar_dir(config.exemplar_dir));
      break;
    }
  }
  return set;
}

std::string backend_label(const BackendSet & backends, control::ControllerKind mode)
{
  return std::string(intent::to_string(backends.for_mode(mode).tag()));
}

std::vector<RunTask> make_tasks(
  std::span<const sim::ScenarioSpec> specs, std::span<const control::ControllerKind> modes,
  std::optional<double> alpha_override)
{
  std::vector<RunTask> out;
  for (const auto mode : modes) {
    for (const auto & spec : specs) {
      RunTask t;
      t.spec = spec;
      t.mode = mode;
      t.alpha_override = mode == control::ControllerKind::Adaptive ? alpha_override : std::nullopt;
      t.label = std::string(control::to_string(mode));
      out.push_back(std::move(t));
    }
  }
  return out;
}

std::vector<RunTask> make_sweep_tasks(
  std::span<const sim::ScenarioSpec> specs, std::span<const double> alphas)
{
  std::vector<RunTask> out;
  for (const double a : alphas) {
    for (const auto & spec : specs) {
      if (spec.demographic != core::Demographic::Child) {
        continue;
      }
      RunTask t;
      t.spec = spec;
      t.mode = control::ControllerKind::Adaptive;
      t.alpha_override = a;
      t.label = fmt::format("sweep-alpha-{:.2f}", a);
      out.push_back(std::move(t));
    }
  }
  return out;
}

std::filesystem::path episode_dir(const std::filesystem::path & suite_dir, const RunTask & task)
{
  return suite_dir / task.label / task.spec.id;
}

namespace
{

std::string mode_label(const RunTask & task)
{
  if (task.alpha_override) {
    return fmt::format("{}@{:.2f}", control::to_string(task.mode), *task.alpha_override);
  }
  return std::string(control::to_string(task.mode));
}

std::string csv_text(std::span<const perception::TrajectorySample> log)
{
  std::ostringstream os;
  perception::write_trajectory_csv(os, log);
  return os.str();
}

void persist(const RunTask & task, const RunOptions & options, const EpisodeArtifacts & a)
{
  const auto dir = episode_dir(options.suite_dir, task);
  write_text_file_atomic(dir / "trajectory.csv", csv_text(a.trajectory));
  auto j = metrics::to_json(a.result);
  j["scenario"] = to_json(task.spec);
  write_text_file_atomic(dir / "result.json", metrics::canonical_dump(j));
}

}  // namespace

EpisodeArtifacts execute_task(
  const RunTask & task, const BackendSet & backends, const RunOptions & options)
{
  auto config = options.episode;
  config.controller.kind = task.mode;
  config.controller.alpha_override = task.alpha_override;
  const auto & backend = backends.for_mode(task.mode);
  const auto outcome = sim::run_episode(task.spec, backend, config);

  EpisodeArtifacts a;
  a.trajectory = perception::quantized(outcome.trajectory);
  auto & r = a.result;
  r.scenario_id = task.spec.id;
  r.mode = mode_label(task);
  r.backend = std::string(intent::to_string(backend.tag()));
  r.complexity = task.spec.complexity;
  r.alpha_override = task.alpha_override;
  r.truth_intent = task.spec.ground_truth();
  r.truth_demographic = task.spec.demographic;
  r.has_pedestrian = task.spec.pedestrian.has_value();
  const bool consulted = std::any_of(outcome.events.begin(), outcome.events.end(), [](const auto & e) {
    return e.tag == sim::EventTag::Trigger;
  });
  const auto fired = std::find_if(outcome.decisions.begin(), outcome.decisions.end(), [](const auto & d) {
    return d.intent == core::IntentClass::NonYielding;
  });
  if (fired != outcome.decisions.end()) {
    r.predicted_intent = fired->intent;
    r.predicted_demographic = fired->demographic;
  } else if (!outcome.decisions.empty()) {
    r.predicted_intent = outcome.decisions.front().intent;
    r.predicted_demographic = outcome.decisions.front().demographic;
  }
  if (!r.predicted_intent && consulted) {
    r.predicted_intent = core::IntentClass::Yielding;
    r.predicted_demographic = task.spec.demographic;
  }
  r.braking_events = outcome.emergency_count();
  r.fallback_used = outcome.fallback_used();
  r.nominal_speed = a.trajectory.empty() ? 0.0 : std::hypot(a.trajectory.front().v_veh_x, a.trajectory.front().v_veh_y);
  r.log = metrics::compute_log_metrics(
    a.trajectory, outcome.termination, task.spec.geometry, options.metrics);
  return a;
}

std::vector<std::string> check_invariants(
  const metrics::EpisodeResult & result, std::span<const perception::TrajectorySample> trajectory,
  const metrics::MetricsConfig & config)
{
  std::vector<std::string> v;
  const auto tag = [&](const std::string & what) {
    v.push_back(fmt::format("{} [{}]: {}", result.scenario_id, result.mode, what));
  };
  if (result.log.conflict != (result.log.min_ttc < config.conflict_ttc)) {
    tag("conflict flag disagrees with min TTC");
  }
  if (result.log.collision && !result.log.conflict) {
    tag("collision without conflict");
  }
  if (result.predicted_intent && !result.has_pedestrian) {
    tag("inference ran without a pedestrian");
  }
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    if (trajectory[i].frame != static_cast<std::int64_t>(i)) {
      tag(fmt::format("frame gap at row {}", i));
      break;
    }
    if (trajectory[i].v_veh_x < 0.0) {
      tag(fmt::format("negative speed at frame {}", trajectory[i].frame));
      break;
    }
  }
  if (!trajectory.empty() && trajectory.back().frame != result.log.final_tick) {
    tag("final tick disagrees with the trajectory");
  }
  return v;
}

std::optional<metrics::EpisodeResult> load_existing(const RunTask & task, const RunOptions & options)
{
  const auto dir = episode_dir(options.suite_dir, task);
  const auto result_path = dir / "result.json";
  const auto csv_path = dir / "trajectory.csv";
  if (!std::filesystem::exists(result_path) || !std::filesystem::exists(csv_path)) {
    return std::nullopt;
  }
  try {
    const auto j = nlohmann::json::parse(read_text_file(result_path));
    auto result = metrics::episode_result_from_json(j);
    if (result.scenario_id != task.spec.id || result.mode != mode_label(task) ||
        scenario_from_json(j.at("scenario")) != task.spec) {
      return std::nullopt;
    }
    const auto log = perception::read_trajectory_csv(csv_path);
    const auto recomputed =
      metrics::compute_log_metrics(log, result.log.termination, task.spec.geometry, options.metrics);
    if (!(recomputed == result.log)) {
      return std::nullopt;
    }
    return result;
  } catch (const std::exception &) {
    return std::nullopt;
  }
}

SuiteRun run_tasks(
  std::span<const RunTask> tasks, const BackendSet & backends, const RunOptions & options)
{
  SuiteRun run;
  run.slots.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex mutex;

  const auto worker = [&] {
    while (!stop.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) {
        return;
      }
      const auto & task = tasks[i];
      if (options.resume) {
        if (auto existing = load_existing(task, options)) {
          std::lock_guard lock(mutex);
          run.slots[i] = std::move(existing);
          ++run.reused;
          continue;
        }
      }
      try {
        auto artifacts = execute_task(task, backends, options);
        auto violations = check_invariants(artifacts.result, artifacts.trajectory, options.metrics);
        persist(task, options, artifacts);
        std::lock_guard lock(mutex);
        run.slots[i] = std::move(artifacts.result);
        ++run.executed;
        run.invariant_violations.insert(
          run.invariant_violations.end(), violations.begin(), violations.end());
      } catch (const sim::EpisodeAborted & e) {
        std::lock_guard lock(mutex);
        stop.store(true);
        if (!run.abort_reason) {
          run.abort_reason = e.what();
        }
      } catch (const std::exception & e) {
        std::lock_guard lock(mutex);
        stop.store(true);
        if (!run.abort_reason) {
          run.abort_reason = fmt::format("{} [{}] failed: {}", task.spec.id, task.label, e.what());
        }
      }
    }
  };

  const int n = std::max(1, std::min<int>(options.parallel, static_cast<int>(tasks.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) {
      pool.emplace_back(worker);
    }
    for (auto & t : pool) {
      t.join();
    }
  }
  std::sort(run.invariant_violations.begin(), run.invariant_violations.end());
  return run;
}

}  // namespace vpi::harness
