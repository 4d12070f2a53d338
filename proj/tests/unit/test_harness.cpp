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
#include "vpi/intent/oracle_backend.hpp"
#include "vpi/intent/rule_backend.hpp"
#include "vpi/perception/trajectory_csv.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <map>

namespace vpi::harness
{
namespace
{

namespace fs = std::filesystem;

class TempDir
{
public:
  explicit TempDir(const std::string & tag)
  : path_(fs::temp_directory_path() /
          ("vpisim-" + tag + "-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
           "-" + std::to_string(reinterpret_cast<std::uintptr_t>(this))))
  {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  TempDir(const TempDir &) = delete;
  TempDir & operator=(const TempDir &) = delete;
  const fs::path & path() const { return path_; }

private:
  fs::path path_;
};

std::map<std::string, std::size_t> count_by(
  const std::vector<sim::ScenarioSpec> & specs, bool by_intent)
{
  std::map<std::string, std::size_t> out;
  for (const auto & s : specs) {
    std::string key(core::to_string(s.demographic));
    if (by_intent) {
      key += "/" + std::string(core::to_string(s.ground_truth()));
    }
    ++out[key];
  }
  return out;
}

TEST(Suite, DemographicEvalComposition)
{
  SuiteConfig c;
  c.kind = SuiteKind::DemographicEval;
  const auto specs = generate_suite(c);
  ASSERT_EQ(specs.size(), 180u);
  const auto counts = count_by(specs, true);
  for (const auto demo : {"Child", "Adult", "Senior"}) {
    EXPECT_EQ(counts.at(std::string(demo) + "/Non-Yielding"), 40u) << demo;
    EXPECT_EQ(counts.at(std::string(demo) + "/Yielding"), 20u) << demo;
  }
  for (const auto & s : specs) {
    ASSERT_TRUE(s.pedestrian);
    EXPECT_NO_THROW(s.validate());
  }
}

TEST(Suite, IntentEvalComposition)
{
  SuiteConfig c;
  c.kind = SuiteKind::IntentEval;
  const auto specs = generate_suite(c);
  ASSERT_EQ(specs.size(), 112u);
  std::map<std::string, std::size_t> by_complexity;
  for (const auto & s : specs) {
    ++by_complexity[s.complexity];
  }
  EXPECT_EQ(by_complexity.size(), 3u);
}

TEST(Suite, SafetyEvalComposition)
{
  SuiteConfig c;
  c.kind = SuiteKind::SafetyEval;
  const auto specs = generate_suite(c);
  ASSERT_EQ(specs.size(), 200u);
  std::size_t ny = 0;
  for (const auto & s : specs) {
    ny += s.ground_truth() == core::IntentClass::NonYielding ? 1 : 0;
    EXPECT_GE(core::ms_to_kmh(s.vehicle_speed), 25.0 - 1e-9);
    EXPECT_LE(core::ms_to_kmh(s.vehicle_speed), 35.0 + 1e-9);
  }
  EXPECT_EQ(ny, 92u);
}

TEST(Suite, GenerationIsDeterministicAndSeedSensitive)
{
  SuiteConfig c;
  c.kind = SuiteKind::DemographicEval;
  EXPECT_EQ(generate_suite(c), generate_suite(c));
  EXPECT_EQ(scenarios_to_json(generate_suite(c)).dump(), scenarios_to_json(generate_suite(c)).dump());
  auto other = c;
  other.master_seed = 43;
  EXPECT_NE(generate_suite(other), generate_suite(c));
}

TEST(Suite, ConfigJsonRoundTripAndErrors)
{
  SuiteConfig c;
  c.kind = SuiteKind::Custom;
  c.name = "custom";
  c.composition = {{sim::PedestrianKind::FalseStart, core::Demographic::Senior, 4, "high"}};
  c.alpha_override = 1.3;
  const auto back = suite_config_from_json(to_json(c));
  EXPECT_EQ(to_json(back), to_json(c));
  EXPECT_EQ(generate_suite(back).size(), 4u);

  EXPECT_THROW(suite_config_from_json(nlohmann::json::array()), SuiteConfigError);
  EXPECT_THROW(suite_config_from_json({{"kind", "Bogus"}}), SuiteConfigError);
  EXPECT_THROW(suite_config_from_json({{"endpoint", {{"api_key", "k"}}}}), SuiteConfigError);
  EXPECT_THROW(suite_config_from_json({{"walk_speed", {{"lo", 3.0}, {"hi", 2.0}}}}), SuiteConfigError);
}

TEST(ScenarioIo, RoundTripThroughFile)
{
  TempDir tmp("scen");
  SuiteConfig c;
  c.kind = SuiteKind::IntentEval;
  const auto specs = generate_suite(c);
  save_scenarios(tmp.path() / "s.json", specs);
  EXPECT_EQ(load_scenarios(tmp.path() / "s.json"), specs);

  auto j = to_json(specs.front());
  j["ground_truth"] = specs.front().ground_truth() == core::IntentClass::Yielding ? "Non-Yielding" : "Yielding";
  EXPECT_ANY_THROW(scenario_from_json(j));
}

std::vector<sim::ScenarioSpec> small_suite(std::size_t n)
{
  SuiteConfig c;
  c.kind = SuiteKind::DemographicEval;
  auto specs = generate_suite(c);
  std::vector<sim::ScenarioSpec> out;
  for (std::size_t i = 0; i < specs.size() && out.size() < n; i += 7) {
    out.push_back(specs[i]);
  }
  return out;
}

std::map<std::string, std::string> tree_bytes(const fs::path & root)
{
  std::map<std::string, std::string> out;
  for (const auto & e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) {
      out[fs::relative(e.path(), root).string()] = read_text_file(e.path());
    }
  }
  return out;
}

const std::vector<control::ControllerKind> kModes{
  control::ControllerKind::RuleBaseline, control::ControllerKind::Uniform,
  control::ControllerKind::Adaptive};

TEST(Runner, ParallelMatchesSerialByteForByte)
{
  const auto specs = small_suite(12);
  const auto tasks = make_tasks(specs, kModes);
  const auto backends = make_backends(SuiteConfig{});
  TempDir a("serial");
  TempDir b("parallel");
  RunOptions oa;
  oa.suite_dir = a.path();
  RunOptions ob = oa;
  ob.suite_dir = b.path();
  ob.parallel = 4;
  const auto ra = run_tasks(tasks, backends, oa);
  const auto rb = run_tasks(tasks, backends, ob);
  ASSERT_TRUE(ra.ok()) << (ra.abort_reason ? *ra.abort_reason : "");
  ASSERT_TRUE(rb.ok());
  write_reports(a.path(), "s", ra.results());
  write_reports(b.path(), "s", rb.results());
  EXPECT_EQ(tree_bytes(a.path()), tree_bytes(b.path()));
  EXPECT_EQ(ra.results(), rb.results());
}

TEST(Runner, ResumeReusesCompletedEpisodes)
{
  const auto specs = small_suite(6);
  const auto tasks = make_tasks(specs, kModes);
  const auto backends = make_backends(SuiteConfig{});
  TempDir dir("resume");
  RunOptions o;
  o.suite_dir = dir.path();
  const auto first = run_tasks(tasks, backends, o);
  ASSERT_TRUE(first.ok());
  EXPECT_EQ(first.executed, tasks.size());

  // A damaged artifact is recomputed, the rest are reused.
  fs::remove(episode_dir(dir.path(), tasks[2]) / "trajectory.csv");
  const auto second = run_tasks(tasks, backends, o);
  ASSERT_TRUE(second.ok());
  EXPECT_EQ(second.executed, 1u);
  EXPECT_EQ(second.reused, tasks.size() - 1);
  EXPECT_EQ(second.results(), first.results());

  o.resume = false;
  EXPECT_EQ(run_tasks(tasks, backends, o).executed, tasks.size());
}

struct TransportDown final : intent::IntentBackend
{
  intent::IntentDecision classify(const intent::InferenceContext &) const override
  {
    return intent::make_fallback(intent::BackendTag::Llm, intent::FallbackReason::Transport, "refused");
  }
  intent::BackendTag tag() const noexcept override { return intent::BackendTag::Llm; }
};

TEST(Runner, TransportFailureAbortsButKeepsFinishedWork)
{
  const auto specs = small_suite(4);
  const auto tasks = make_tasks(specs, kModes);
  BackendSet backends;
  backends.primary = std::make_shared<TransportDown>();
  backends.rule = std::make_shared<intent::RuleBackend>();
  TempDir dir("abort");
  RunOptions o;
  o.suite_dir = dir.path();
  const auto run = run_tasks(tasks, backends, o);
  ASSERT_TRUE(run.abort_reason);
  EXPECT_FALSE(run.complete());
  EXPECT_FALSE(run.ok());
  // Baseline episodes run first and only use the rule backend.
  for (std::size_t i = 0; i < specs.size(); ++i) {
    ASSERT_TRUE(run.slots[i]) << i;
    EXPECT_TRUE(fs::exists(episode_dir(dir.path(), tasks[i]) / "result.json"));
  }
  EXPECT_FALSE(run.slots[specs.size()]);
}

TEST(Runner, SweepTasksCoverChildScenariosPerMultiplier)
{
  const auto specs = small_suite(30);
  const std::vector<double> alphas{1.0, 1.4};
  const auto tasks = make_sweep_tasks(specs, alphas);
  std::size_t children = 0;
  for (const auto & s : specs) {
    children += s.demographic == core::Demographic::Child ? 1 : 0;
  }
  ASSERT_EQ(tasks.size(), 2 * children);
  for (const auto & t : tasks) {
    EXPECT_EQ(t.mode, control::ControllerKind::Adaptive);
    EXPECT_TRUE(t.alpha_override);
  }
  EXPECT_EQ(tasks.front().label, "sweep-alpha-1.00");
}

TEST(Replay, StoredMetricsReproduce)
{
  const auto specs = small_suite(3);
  const auto tasks = make_tasks(specs, kModes);
  TempDir dir("replay");
  RunOptions o;
  o.suite_dir = dir.path();
  ASSERT_TRUE(run_tasks(tasks, make_backends(SuiteConfig{}), o).ok());
  for (const auto & t : tasks) {
    const auto rep = replay_trajectory(episode_dir(dir.path(), t) / "trajectory.csv");
    EXPECT_TRUE(rep.stored);
    EXPECT_TRUE(rep.matches) << t.spec.id << " " << t.label;
  }
}

TEST(Replay, CorruptedSeparationIsReported)
{
  const auto specs = small_suite(1);
  const auto tasks = make_tasks(specs, std::vector{control::ControllerKind::Adaptive});
  TempDir dir("corrupt");
  RunOptions o;
  o.suite_dir = dir.path();
  ASSERT_TRUE(run_tasks(tasks, make_backends(SuiteConfig{}), o).ok());
  const auto csv = episode_dir(dir.path(), tasks[0]) / "trajectory.csv";
  auto log = perception::read_trajectory_csv(csv);
  log[4].d += 1.0;
  perception::write_trajectory_csv(csv, log);
  try {
    replay_trajectory(csv);
    FAIL() << "expected a schema error";
  } catch (const perception::CsvSchemaError & e) {
    EXPECT_EQ(e.row(), 6u);
    EXPECT_EQ(e.column(), "d");
  }
}

TEST(Reports, TablesHaveExpectedShape)
{
  const auto specs = small_suite(9);
  const auto tasks = make_tasks(specs, kModes);
  TempDir dir("reports");
  RunOptions o;
  o.suite_dir = dir.path();
  const auto run = run_tasks(tasks, make_backends(SuiteConfig{}), o);
  ASSERT_TRUE(run.ok());
  write_reports(dir.path(), "s", run.results());
  for (const auto * f : {"report.json", "report.csv", "safety.csv", "false_alarms.csv", "traversal.csv",
                         "episodes.csv"}) {
    EXPECT_TRUE(fs::exists(dir.path() / f)) << f;
  }
  EXPECT_EQ(load_results(dir.path()).size(), tasks.size());
  const auto episodes = read_text_file(dir.path() / "episodes.csv");
  EXPECT_EQ(static_cast<std::size_t>(std::count(episodes.begin(), episodes.end(), '\n')),
            tasks.size() + 1);
}

}  // namespace
}  // namespace vpi::harness
