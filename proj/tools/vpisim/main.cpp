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
#include "vpi/harness/report_io.hpp"
#include "vpi/harness/runner.hpp"
#include "vpi/harness/scenario_io.hpp"
#include "vpi/harness/suite.hpp"
#include "vpi/perception/trajectory_csv.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace
{

using vpi::harness::SuiteConfig;

struct CommonFlags
{
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string backend;
  std::vector<std::string> modes;
  std::optional<int> parallel;
  std::string out{"out"};
  std::string endpoint_url;
  std::string model;
  std::string kind;
  std::string name;
  std::string scenarios_path;
  bool no_resume{false};
};

void add_common(CLI::App * cmd, CommonFlags & f, bool with_run_flags)
{
  cmd->add_option("--config", f.config_path, "JSON suite configuration")->check(CLI::ExistingFile);
  cmd->add_option("--seed", f.seed, "Master seed");
  cmd->add_option("--suite", f.kind, "Suite kind")
    ->check(CLI::IsMember({"IntentEval", "DemographicEval", "SafetyEval", "Custom"}));
  cmd->add_option("--name", f.name, "Suite name (output sub-directory)");
  cmd->add_option("--out", f.out, "Output directory");
  if (with_run_flags) {
    cmd->add_option("--backend", f.backend, "Intent backend")
      ->check(CLI::IsMember({"rule", "oracle", "llm"}));
    cmd->add_option("--mode", f.modes, "Controller mode (repeatable)")
      ->check(CLI::IsMember({"baseline", "uniform", "adaptive"}));
    cmd->add_option("--parallel", f.parallel, "Episodes in flight")->check(CLI::PositiveNumber);
    cmd->add_option("--endpoint-url", f.endpoint_url, "Chat-completion endpoint base URL");
    cmd->add_option("--model", f.model, "Model name sent to the endpoint");
    cmd->add_option("--scenarios", f.scenarios_path, "Scenario list from `gen` instead of generating")
      ->check(CLI::ExistingFile);
    cmd->add_flag("--no-resume", f.no_resume, "Re-run episodes even if results exist");
  }
}

SuiteConfig resolve_config(const CommonFlags & f)
{
  nlohmann::json j = nlohmann::json::object();
  if (!f.config_path.empty()) {
    j = nlohmann::json::parse(vpi::harness::read_text_file(f.config_path));
  }
  if (f.seed) {
    j["master_seed"] = *f.seed;
  }
  if (!f.kind.empty()) {
    j["kind"] = f.kind;
  }
  if (!f.name.empty()) {
    j["name"] = f.name;
  }
  if (!f.backend.empty()) {
    j["backend"] = f.backend;
  }
  if (!f.modes.empty()) {
    j["modes"] = f.modes;
  }
  if (f.parallel) {
    j["parallel"] = *f.parallel;
  }
  if (!f.endpoint_url.empty()) {
    j["endpoint"]["url"] = f.endpoint_url;
  }
  if (!f.model.empty()) {
    j["endpoint"]["model"] = f.model;
  }
  auto config = vpi::harness::suite_config_from_json(j);
  if (f.name.empty() && !j.contains("name")) {
    config.name = std::string(vpi::harness::to_string(config.kind));
  }
  return config;
}

std::vector<vpi::sim::ScenarioSpec> resolve_specs(const CommonFlags & f, const SuiteConfig & c)
{
  if (!f.scenarios_path.empty()) {
    return vpi::harness::load_scenarios(f.scenarios_path);
  }
  return vpi::harness::generate_suite(c);
}

vpi::harness::RunOptions run_options(const CommonFlags & f, const SuiteConfig & c)
{
  vpi::harness::RunOptions o;
  o.suite_dir = std::filesystem::path(f.out) / c.name;
  o.parallel = c.parallel;
  o.resume = !f.no_resume;
  return o;
}

int finish(const vpi::harness::SuiteRun & run)
{
  fmt::print(
    "episodes: {} executed, {} reused, {} total\n", run.executed, run.reused, run.slots.size());
  for (const auto & v : run.invariant_violations) {
    fmt::print(stderr, "invariant violation: {}\n", v);
  }
  if (run.abort_reason) {
    fmt::print(stderr, "suite aborted: {}\n", *run.abort_reason);
  }
  return run.ok() ? 0 : 1;
}

int cmd_gen(const CommonFlags & f, const std::string & output)
{
  const auto config = resolve_config(f);
  const auto specs = vpi::harness::generate_suite(config);
  const auto path = output.empty() ? std::filesystem::path(f.out) / config.name / "scenarios.json"
                                   : std::filesystem::path(output);
  vpi::harness::save_scenarios(path, specs);
  fmt::print("wrote {} scenarios to {}\n", specs.size(), path.string());
  return 0;
}

int cmd_run(const CommonFlags & f)
{
  const auto config = resolve_config(f);
  const auto specs = resolve_specs(f, config);
  const auto backends = vpi::harness::make_backends(config);
  const auto options = run_options(f, config);
  vpi::harness::save_scenarios(options.suite_dir / "scenarios.json", specs);
  vpi::harness::write_text_file_atomic(
    options.suite_dir / "config.json", vpi::metrics::canonical_dump(vpi::harness::to_json(config)));

  const auto tasks = vpi::harness::make_tasks(specs, config.modes, config.alpha_override);
  const auto run = vpi::harness::run_tasks(tasks, backends, options);
  vpi::harness::write_reports(options.suite_dir, config.name, run.results());
  fmt::print("reports written to {}\n", options.suite_dir.string());
  return finish(run);
}

int cmd_sweep(const CommonFlags & f)
{
  const auto config = resolve_config(f);
  const auto specs = resolve_specs(f, config);
  const auto backends = vpi::harness::make_backends(config);
  const auto options = run_options(f, config);
  const auto tasks = vpi::harness::make_sweep_tasks(specs, config.sweep_alphas);
  const auto run = vpi::harness::run_tasks(tasks, backends, options);

  const auto results = run.results();
  for (const double a : config.sweep_alphas) {
    const auto label = fmt::format("sweep-alpha-{:.2f}", a);
    std::vector<vpi::metrics::EpisodeResult> subset;
    for (const auto & r : results) {
      if (r.alpha_override && fmt::format("sweep-alpha-{:.2f}", *r.alpha_override) == label) {
        subset.push_back(r);
      }
    }
    vpi::harness::write_reports(options.suite_dir / label, config.name + "/" + label, subset);
  }
  const auto report = vpi::metrics::aggregate(results);
  vpi::harness::write_text_file_atomic(
    options.suite_dir / "sweep.csv", vpi::harness::sweep_table_csv(report));
  fmt::print("sweep reports written to {}\n", options.suite_dir.string());
  return finish(run);
}

int cmd_replay(const std::vector<std::string> & paths)
{
  int status = 0;
  for (const auto & p : paths) {
    try {
      const auto r = vpi::harness::replay_trajectory(p);
      fmt::print("{}\n{}", p, vpi::metrics::canonical_dump(vpi::metrics::to_json(r.recomputed)));
      if (!r.stored) {
        fmt::print("no stored result next to the log; nothing to compare\n");
      } else if (r.matches) {
        fmt::print("matches stored metrics\n");
      } else {
        fmt::print(stderr, "{}: recomputed metrics differ from the stored result\n", p);
        status = 1;
      }
    } catch (const vpi::perception::CsvSchemaError & e) {
      fmt::print(stderr, "{}: schema error: {}\n", p, e.what());
      status = 1;
    }
  }
  return status;
}

int cmd_report(const std::string & dir, const std::string & name)
{
  const std::filesystem::path suite_dir(dir);
  auto results = vpi::harness::load_results(suite_dir);
  const auto label = name.empty() ? suite_dir.filename().string() : name;
  fmt::print("aggregating {} results from {}\n", results.size(), suite_dir.string());
  vpi::harness::write_reports(suite_dir, label, std::move(results));
  return 0;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Closed-loop vehicle-pedestrian interaction simulator and evaluation harness"};
  app.require_subcommand(1);

  CommonFlags gen_flags;
  std::string gen_output;
  auto * gen = app.add_subcommand("gen", "Generate a scenario list");
  add_common(gen, gen_flags, false);
  gen->add_option("-o,--output", gen_output, "Scenario file (default <out>/<suite>/scenarios.json)");

  CommonFlags run_flags;
  auto * run = app.add_subcommand("run", "Run a suite and write per-episode artifacts and reports");
  add_common(run, run_flags, true);

  CommonFlags sweep_flags;
  auto * sweep = app.add_subcommand("sweep", "Adaptive-mode multiplier sweep over child scenarios");
  add_common(sweep, sweep_flags, true);

  std::vector<std::string> replay_paths;
  auto * replay = app.add_subcommand("replay", "Recompute metrics from trajectory logs");
  replay->add_option("trajectory", replay_paths, "trajectory.csv files")->required()->check(CLI::ExistingFile);

  std::string report_dir;
  std::string report_name;
  auto * report = app.add_subcommand("report", "Re-aggregate stored episode results");
  report->add_option("suite_dir", report_dir, "Suite output directory")->required()->check(CLI::ExistingDirectory);
  report->add_option("--name", report_name, "Suite name recorded in report.json");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      return cmd_gen(gen_flags, gen_output);
    }
    if (*run) {
      return cmd_run(run_flags);
    }
    if (*sweep) {
      return cmd_sweep(sweep_flags);
    }
    if (*replay) {
      return cmd_replay(replay_paths);
    }
    if (*report) {
      return cmd_report(report_dir, report_name);
    }
  } catch (const vpi::intent::ConfigError & e) {
    fmt::print(stderr, "configuration error: {}\n", e.what());
    return 2;
  } catch (const vpi::harness::SuiteConfigError & e) {
    fmt::print(stderr, "configuration error: {}\n", e.what());
    return 2;
  } catch (const std::exception & e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 0;
}
