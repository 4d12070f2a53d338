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

// Acceptance checks. Prints one [PASS]/[FAIL] line per criterion and exits
// non-zero if any criterion fails.

#include "vpi/control/safety_controller.hpp"
#include "vpi/control/tier_policy.hpp"
#include "vpi/core/rng.hpp"
#include "vpi/harness/report_io.hpp"
#include "vpi/harness/runner.hpp"
#include "vpi/harness/scenario_io.hpp"
#include "vpi/harness/suite.hpp"
#include "vpi/intent/exemplar.hpp"
#include "vpi/intent/llm_backend.hpp"
#include "vpi/intent/oracle_backend.hpp"
#include "vpi/intent/prompt.hpp"
#include "vpi/intent/response_parser.hpp"
#include "vpi/intent/rule_backend.hpp"
#include "vpi/metrics/episode_metrics.hpp"
#include "vpi/metrics/ttc.hpp"
#include "vpi/perception/kinematic_json.hpp"
#include "vpi/sim/episode.hpp"
#include "vpi/sim/geometry.hpp"

#include <fmt/format.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <functional>
#include <map>
#include <thread>

#include <unistd.h>

namespace
{

namespace fs = std::filesystem;
using namespace vpi;

struct Outcome
{
  bool pass{false};
  std::string detail;
};

fs::path scratch(const std::string & tag)
{
  const auto p = fs::temp_directory_path() / fmt::format("vpisim-accept-{}-{}", tag, ::getpid());
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

Outcome tier_table()
{
  // Printed endpoints, ordered by band for alpha 1.4 / 1.0 / 1.2.
  const std::map<double, std::array<double, 4>> printed{
    {1.4, {6.55, 13.09, 19.64, 26.18}},
    {1.0, {4.68, 9.35, 14.03, 18.70}},
    {1.2, {5.61, 11.22, 16.83, 22.44}},
  };
  const auto policy = control::TierPolicy::tiered();
  double worst = 0.0;
  for (const auto & [alpha, row] : printed) {
    const auto b = policy.boundaries(alpha);
    for (std::size_t i = 0; i < 4; ++i) {
      worst = std::max(worst, std::abs(b[i] - row[i]));
    }
  }
  return {worst <= 0.01, fmt::format("12 endpoints, max deviation {:.4f} m", worst)};
}

Outcome empty_road_traversal()
{
  sim::ScenarioSpec spec;
  spec.id = "no-pedestrian";
  spec.vehicle_speed = core::kmh_to_ms(28.2);
  const intent::RuleBackend rule;
  const auto out = sim::run_episode(spec, rule, {});
  const auto log = perception::quantized(out.trajectory);
  const auto t = metrics::traversal_time(log, out.termination, spec.geometry);
  if (!t) {
    return {false, "episode did not egress"};
  }
  return {std::abs(*t - 8.3) <= 0.1, fmt::format("traversal {:.2f} s", *t)};
}

Outcome ttc_equivalence()
{
  core::Rng rng(2024);
  constexpr double dt = 0.05;
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    // Pedestrian on a straight collision course with the bumper.
    const double speed = rng.uniform(3.0, 12.0);
    const double closing = rng.uniform(1.0, 8.0);
    const double r0 = rng.uniform(8.0, 40.0);
    const double theta = rng.uniform(-1.2, 1.2);
    const core::Vec2 u{std::cos(theta), std::sin(theta)};
    const core::Vec2 veh0{-60.0, 0.0};
    const core::Vec2 veh_vel{speed, 0.0};
    const core::Vec2 ped0 = sim::lane_heading() * 2.0 + veh0 + u * r0;
    const core::Vec2 ped_vel = veh_vel - u * closing;

    perception::TrajectoryLog log;
    std::optional<double> contact;
    for (int i = 0; i < 2000 && !contact; ++i) {
      const double t = i * dt;
      const auto w = core::WorldState::make(
        i, dt, veh0 + veh_vel * t, veh_vel, ped0 + ped_vel * t, ped_vel, sim::lane_heading(), 2.0);
      const auto rel = w.pedestrian_pos() - w.bumper();
      if (rel.dot(u) <= 0.0) {
        contact = t;
      }
      perception::TrajectorySample s;
      s.frame = i;
      s.d = w.separation();
      log.push_back(s);
    }
    const auto stream = metrics::ttc_stream(log);
    if (!contact || stream.empty() || !stream.front().ttc) {
      return {false, fmt::format("case {} has no defined TTC", k)};
    }
    const double remaining = *contact - static_cast<double>(stream.front().tick) * dt;
    worst = std::max(worst, std::abs(*stream.front().ttc - remaining));
  }
  return {worst <= 0.05 + 1e-6, fmt::format("100 cases, max |TTC - contact time| {:.4f} s", worst)};
}

Outcome rule_truth_table()
{
  const auto classify = [](double d, double closing) {
    perception::TrajectorySample s;
    s.x_veh = -10.0;
    s.v_veh_x = 5.0;
    s.x_ped = -8.0 + d;
    s.v_ped_x = -closing;
    s.d = d;
    perception::TrajectoryBuffer b;
    b.append(s);
    return intent::rule_classify(b, core::Demographic::Adult).intent;
  };
  const bool a = classify(8.0, 1.0) == core::IntentClass::NonYielding;
  const bool b = classify(12.0, 1.0) == core::IntentClass::Yielding;
  const bool c = classify(8.0, 0.5) == core::IntentClass::Yielding;
  return {a && b && c, fmt::format("8m/1.0:{} 12m/1.0:{} 8m/0.5:{}", a, b, c)};
}

Outcome resume_truth_table()
{
  const auto path = sim::lane_path(sim::Geometry{});
  const auto world = [](double ped_y, double ped_vy, double veh_speed, double veh_x = -20.0) {
    return core::WorldState::make(
      60, 0.05, {veh_x, 0.0}, {veh_speed, 0.0}, {0.0, ped_y}, {0.0, ped_vy}, {1.0, 0.0}, 2.0);
  };
  control::ControllerState st;
  st.mode = control::ControlMode::Emergency;
  st.alpha = 1.4;
  st.t_stop = 0.0;
  int ok = 0;
  for (int mask = 0; mask < 8; ++mask) {
    const bool sp = mask & 1;
    const bool te = mask & 2;
    const bool be = mask & 4;
    const auto f = control::resume_check(
      world(sp ? -5.5 : -1.0, be ? -1.0 : 0.0, te ? 0.0 : 5.0), st, 3.0, path);
    ok += f == control::ResumeFlags{sp, te, be} && f.any() == (sp || te || be);
  }
  // Boundary values for a child: 4.9 m clearance, 2.0 s wait, 7.0 m standoff, 0.5 m/s retreat.
  const bool clearance = !control::resume_check(world(-4.9, 0.0, 5.0), st, 3.0, path).spatial &&
                         control::resume_check(world(-4.91, 0.0, 5.0), st, 3.0, path).spatial;
  const bool wait = !control::resume_check(world(-1.0, 0.0, 0.0), st, 2.0, path).temporal &&
                    control::resume_check(world(-1.0, 0.0, 0.0), st, 2.01, path).temporal;
  // Bumper 7.0 m from a pedestrian standing on the centreline of the lane ahead.
  const auto standoff_world = [&](double gap) {
    return core::WorldState::make(
      60, 0.05, {-2.0 - gap, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}, 2.0);
  };
  const bool standoff = !control::resume_check(standoff_world(7.0), st, 3.0, path).temporal &&
                        control::resume_check(standoff_world(7.01), st, 3.0, path).temporal;
  const bool retreat = !control::resume_check(world(-1.0, -0.5, 5.0), st, 3.0, path).behavioral &&
                       control::resume_check(world(-1.0, -0.51, 5.0), st, 3.0, path).behavioral;
  const bool pass = ok == 8 && clearance && wait && standoff && retreat;
  return {pass, fmt::format("{}/8 combinations, boundaries clearance:{} wait:{} standoff:{} retreat:{}",
                            ok, clearance, wait, standoff, retreat)};
}

Outcome no_collision()
{
  harness::SuiteConfig c;
  c.name = "nocollision";
  c.kind = harness::SuiteKind::Custom;
  c.master_seed = 6;
  c.speed_kmh = harness::Range{25.0, 35.0};
  c.composition = {{sim::PedestrianKind::NonYieldCross, core::Demographic::Adult, 100, "clear"}};
  const auto specs = harness::generate_suite(c);
  const intent::OracleBackend oracle(intent::OracleCalibration::ground_truth());
  sim::EpisodeConfig cfg;
  cfg.controller.kind = control::ControllerKind::Adaptive;
  int collisions = 0;
  int braked = 0;
  double min_sep = 1e9;
  double min_stop_sep = 1e9;
  for (const auto & spec : specs) {
    const auto out = sim::run_episode(spec, oracle, cfg);
    collisions += out.termination == sim::Termination::Collision;
    braked += out.emergency_count() > 0;
    bool stopped = false;
    for (const auto & s : out.trajectory) {
      min_sep = std::min(min_sep, s.d);
      if (!stopped && s.frame > 0 && s.v_veh_x < 0.1) {
        stopped = true;
        min_stop_sep = std::min(min_stop_sep, s.d);
      }
    }
  }
  const bool pass = specs.size() == 100 && collisions == 0 && min_sep > 0.5 &&
                    (min_stop_sep > 0.5 || min_stop_sep == 1e9);
  return {pass, fmt::format("{} episodes, {} braked, {} collisions, min separation {:.2f} m, "
                            "min separation at stop {:.2f} m",
                            specs.size(), braked, collisions, min_sep, min_stop_sep)};
}

std::optional<harness::SuiteRun> run_suite(
  const harness::SuiteConfig & c, const fs::path & dir, int parallel)
{
  const auto specs = harness::generate_suite(c);
  const auto tasks = harness::make_tasks(specs, c.modes, c.alpha_override);
  harness::RunOptions o;
  o.suite_dir = dir;
  o.parallel = parallel;
  o.resume = false;
  auto run = harness::run_tasks(tasks, harness::make_backends(c), o);
  if (!run.ok()) {
    return std::nullopt;
  }
  harness::save_scenarios(dir / "scenarios.json", specs);
  harness::write_reports(dir, c.name, run.results());
  return run;
}

Outcome demographic_ordering()
{
  harness::SuiteConfig c;
  c.name = "DemographicEval";
  c.kind = harness::SuiteKind::DemographicEval;
  const auto dir = scratch("demo");
  const auto run = run_suite(c, dir, 1);
  fs::remove_all(dir);
  if (!run) {
    return {false, "suite run failed"};
  }
  const auto report = metrics::aggregate(run->results());
  const auto get = [&](const char * mode, const char * demo) {
    const std::string backend = std::string(mode) == "baseline" ? "rule" : "oracle";
    return report.find(mode, backend, demo);
  };
  for (const auto * mode : {"baseline", "uniform", "adaptive"}) {
    for (const auto * demo : {"Child", "Senior"}) {
      if (get(mode, demo) == nullptr || !get(mode, demo)->min_ttc.mean) {
        return {false, fmt::format("missing stratum {}/{}", mode, demo)};
      }
    }
  }
  const auto conflicts = [&](const char * m) { return get(m, "Child")->conflicts; };
  const auto ttc = [&](const char * m, const char * d) { return *get(m, d)->min_ttc.mean; };
  const bool conflict_order =
    conflicts("adaptive") < conflicts("uniform") && conflicts("uniform") < conflicts("baseline");
  bool ttc_order = true;
  for (const auto * d : {"Child", "Senior"}) {
    ttc_order = ttc_order && ttc("adaptive", d) > ttc("uniform", d) && ttc("uniform", d) > ttc("baseline", d);
  }
  return {conflict_order && ttc_order,
          fmt::format("child conflicts A/U/B {}/{}/{}; mean min-TTC child {:.3f}/{:.3f}/{:.3f}, "
                      "senior {:.3f}/{:.3f}/{:.3f}",
                      conflicts("adaptive"), conflicts("uniform"), conflicts("baseline"),
                      ttc("adaptive", "Child"), ttc("uniform", "Child"), ttc("baseline", "Child"),
                      ttc("adaptive", "Senior"), ttc("uniform", "Senior"), ttc("baseline", "Senior"))};
}

std::map<std::string, std::string> tree_bytes(const fs::path & root)
{
  std::map<std::string, std::string> out;
  for (const auto & e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) {
      out[fs::relative(e.path(), root).string()] = harness::read_text_file(e.path());
    }
  }
  return out;
}

Outcome determinism()
{
  harness::SuiteConfig c;
  c.name = "IntentEval";
  c.kind = harness::SuiteKind::IntentEval;
  const auto a = scratch("det-a");
  const auto b = scratch("det-b");
  const auto ra = run_suite(c, a, 1);
  const auto rb = run_suite(c, b, 3);
  const auto ta = tree_bytes(a);
  const auto tb = tree_bytes(b);
  fs::remove_all(a);
  fs::remove_all(b);
  if (!ra || !rb) {
    return {false, "suite run failed"};
  }
  std::size_t csvs = 0;
  for (const auto & [name, _] : ta) {
    csvs += name.ends_with("trajectory.csv");
  }
  return {ta == tb && csvs == ra->slots.size(),
          fmt::format("{} files compared, {} trajectory CSVs, identical: {}", ta.size(), csvs, ta == tb)};
}

Outcome prompt_golden()
{
  const auto exemplars = intent::load_exemplar_dir(VPI_DATA_DIR "/exemplars");
  const auto kin = perception::export_kinematic_json(exemplars.front().kinematic_log);
  const auto msgs = intent::build_prompt(
    "A pedestrian stands at the kerb of a marked crosswalk.", kin, exemplars);
  const auto text = intent::messages_to_json(msgs).dump(2) + "\n";
  const fs::path golden = VPI_GOLDEN_DIR "/prompt_golden.json";
  const bool golden_ok = fs::exists(golden) && harness::read_text_file(golden) == text;

  httplib::Server server;
  std::string body;
  server.Post("/v1/chat/completions", [&body](const httplib::Request & req, httplib::Response & res) {
    body = req.body;
    res.set_content(
      nlohmann::json{{"choices", {{{"message", {{"content", "DECISION: Yielding"}}}}}}}.dump(),
      "application/json");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread t([&] { server.listen_after_bind(); });
  server.wait_until_ready();
  intent::EndpointConfig cfg;
  cfg.url = fmt::format("http://127.0.0.1:{}", port);
  cfg.model = "mock";
  cfg.initial_backoff = std::chrono::milliseconds(0);
  intent::llm_classify("A pedestrian stands at the kerb.", kin, exemplars, cfg);
  server.stop();
  t.join();

  std::size_t markers = 0;
  const std::string marker(intent::kExemplarMarker);
  for (auto p = body.find(marker); p != std::string::npos; p = body.find(marker, p + 1)) {
    ++markers;
  }
  return {golden_ok && markers == 6,
          fmt::format("golden match: {}, markers in captured request: {}", golden_ok, markers)};
}

Outcome parser_corpus()
{
  const auto corpus = nlohmann::json::parse(harness::read_text_file(VPI_FIXTURE_DIR "/response_corpus.json"));
  std::size_t bad = 0;
  std::size_t bad_ok = 0;
  std::size_t good = 0;
  std::size_t good_ok = 0;
  for (const auto & c : corpus.at("cases")) {
    const auto d = intent::parse_response(c.at("response").get<std::string>());
    const auto & exp = c.at("expected");
    if (exp.is_string()) {
      ++bad;
      bad_ok += d.fallback_used && d.intent == core::IntentClass::NonYielding &&
                d.demographic == core::Demographic::Child;
    } else {
      ++good;
      good_ok += !d.fallback_used &&
                 core::to_string(d.intent) == exp.at("intent").get<std::string>() &&
                 core::to_string(d.demographic) == exp.at("demographic").get<std::string>();
    }
  }
  return {bad >= 20 && bad == bad_ok && good == good_ok,
          fmt::format("malformed {}/{} fell back, well-formed {}/{} parsed", bad_ok, bad, good_ok, good)};
}

}  // namespace

int main()
{
  const std::vector<std::pair<std::string, std::function<Outcome()>>> checks{
    {"AC1 tier boundary table", tier_table},
    {"AC2 empty-road traversal time", empty_road_traversal},
    {"AC3 TTC equals first-contact time", ttc_equivalence},
    {"AC4 rule detector truth table", rule_truth_table},
    {"AC5 resume truth table and boundaries", resume_truth_table},
    {"AC6 no collisions under ground-truth intent", no_collision},
    {"AC7 demographic safety ordering", demographic_ordering},
    {"AC8 deterministic suite output", determinism},
    {"AC9 prompt golden file and exemplar markers", prompt_golden},
    {"AC10 parser fallback corpus", parser_corpus},
  };
  int failures = 0;
  for (const auto & [name, fn] : checks) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception & e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    fmt::print("[{}] {}: {}\n", o.pass ? "PASS" : "FAIL", name, o.detail);
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", checks.size() - failures, checks.size());
  return failures == 0 ? 0 : 1;
}
