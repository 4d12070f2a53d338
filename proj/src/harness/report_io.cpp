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

#include "vpi/harness/report_io.hpp"

#include "vpi/harness/scenario_io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <tuple>

namespace vpi::harness
{

namespace
{

std::string num(const std::optional<double> & v, int precision = 4)
{
  return v ? fmt::format("{:.{}f}", *v, precision) : std::string();
}

std::string num(double v, int precision = 4)
{
  return std::isfinite(v) ? fmt::format("{:.{}f}", v, precision) : std::string("inf");
}

}  // namespace

std::string safety_table_csv(const metrics::AggregateReport & report)
{
  std::string out =
    "mode,backend,demographic,episodes,conflicts,conflict_rate,collisions,nonyielding,"
    "false_negatives,false_negative_rate,mean_min_ttc,sd_min_ttc,unbounded_ttc\n";
  for (const auto & [k, r] : report.strata) {
    out += fmt::format(
      "{},{},{},{},{},{},{},{},{},{},{},{},{}\n", k.mode, k.backend, k.demographic, r.episodes,
      r.conflicts, num(r.conflict_rate), r.collisions, r.nonyielding_truth, r.false_negatives,
      num(r.false_negative_rate), num(r.min_ttc.mean, 3), num(r.min_ttc.sd, 3), r.ttc_unbounded);
  }
  return out;
}

std::string false_alarm_table_csv(const metrics::AggregateReport & report)
{
  std::string out =
    "mode,backend,yielding,false_alarms,false_alarm_rate,speed_maintained,"
    "speed_maintenance_rate,mean_braking_events\n";
  for (const auto & [k, r] : report.strata) {
    if (k.demographic != "All") {
      continue;
    }
    out += fmt::format(
      "{},{},{},{},{},{},{},{}\n", k.mode, k.backend, r.yielding_truth, r.false_positives,
      num(r.false_alarm_rate), r.yielding_speed_maintained, num(r.speed_maintenance_rate),
      num(r.mean_braking_events, 3));
  }
  return out;
}

std::string traversal_table_csv(const metrics::AggregateReport & report)
{
  std::string out = "mode,backend,intent,completed,mean_traversal_s,sd_traversal_s,not_completed\n";
  for (const auto & [k, r] : report.strata) {
    if (k.demographic != "All") {
      continue;
    }
    out += fmt::format(
      "{},{},Yielding,{},{},{},\n", k.mode, k.backend, r.traversal_yielding.n,
      num(r.traversal_yielding.mean, 3), num(r.traversal_yielding.sd, 3));
    out += fmt::format(
      "{},{},Non-Yielding,{},{},{},\n", k.mode, k.backend, r.traversal_nonyielding.n,
      num(r.traversal_nonyielding.mean, 3), num(r.traversal_nonyielding.sd, 3));
    out += fmt::format(
      "{},{},All,{},{},{},{}\n", k.mode, k.backend, r.traversal_all.n,
      num(r.traversal_all.mean, 3), num(r.traversal_all.sd, 3), r.not_completed);
  }
  return out;
}

std::string report_csv(const metrics::AggregateReport & report)
{
  std::string out =
    "mode,backend,demographic,episodes,conflicts,collisions,nonyielding,false_negatives,"
    "yielding,false_positives,classified,correct_intent,correct_demographic,accuracy,"
    "demographic_accuracy,false_negative_rate,false_alarm_rate,speed_maintenance_rate,"
    "braking_events,fallbacks,mean_min_ttc,sd_min_ttc,unbounded_ttc,mean_traversal_s,"
    "not_completed\n";
  for (const auto & [k, r] : report.strata) {
    out += fmt::format(
      "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", k.mode,
      k.backend, k.demographic, r.episodes, r.conflicts, r.collisions, r.nonyielding_truth,
      r.false_negatives, r.yielding_truth, r.false_positives, r.classified, r.correct_intent,
      r.correct_demographic, num(r.accuracy), num(r.demographic_accuracy),
      num(r.false_negative_rate), num(r.false_alarm_rate), num(r.speed_maintenance_rate),
      r.braking_events, r.fallbacks, num(r.min_ttc.mean, 3), num(r.min_ttc.sd, 3),
      r.ttc_unbounded, num(r.traversal_all.mean, 3), r.not_completed);
  }
  return out;
}

std::string episodes_csv(std::span<const metrics::EpisodeResult> results)
{
  std::string out =
    "scenario_id,mode,backend,complexity,truth_intent,truth_demographic,predicted_intent,"
    "predicted_demographic,termination,final_tick,min_ttc,conflict,collision,min_separation,"
    "traversal_time,speed_maintained,braking_events,fallback_used\n";
  for (const auto & r : results) {
    out += fmt::format(
      "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.scenario_id, r.mode, r.backend,
      r.complexity, core::to_string(r.truth_intent), core::to_string(r.truth_demographic),
      r.predicted_intent ? std::string(core::to_string(*r.predicted_intent)) : std::string(),
      r.predicted_demographic ? std::string(core::to_string(*r.predicted_demographic))
                              : std::string(),
      sim::to_string(r.log.termination), r.log.final_tick, num(r.log.min_ttc, 3),
      r.log.conflict ? 1 : 0, r.log.collision ? 1 : 0, num(r.log.min_separation, 3),
      num(r.log.traversal_time, 3), r.log.speed_maintained ? 1 : 0, r.braking_events,
      r.fallback_used ? 1 : 0);
  }
  return out;
}

std::string sweep_table_csv(const metrics::AggregateReport & report)
{
  std::string out = "mode,episodes,conflicts,conflict_rate,collisions,mean_min_ttc,sd_min_ttc,"
                    "mean_traversal_s,not_completed\n";
  for (const auto & [k, r] : report.strata) {
    if (k.demographic != "Child") {
      continue;
    }
    out += fmt::format(
      "{},{},{},{},{},{},{},{},{}\n", k.mode, r.episodes, r.conflicts, num(r.conflict_rate),
      r.collisions, num(r.min_ttc.mean, 3), num(r.min_ttc.sd, 3), num(r.traversal_all.mean, 3),
      r.not_completed);
  }
  return out;
}

nlohmann::json report_document(
  const std::string & suite_name, std::span<const metrics::EpisodeResult> results,
  const metrics::AggregateReport & report)
{
  return {
    {"suite", suite_name},
    {"episodes", results.size()},
    {"report", metrics::to_json(report)},
  };
}

metrics::AggregateReport write_reports(
  const std::filesystem::path & dir, const std::string & suite_name,
  std::vector<metrics::EpisodeResult> results)
{
  std::sort(results.begin(), results.end(), [](const auto & a, const auto & b) {
    return std::tie(a.mode, a.backend, a.scenario_id) < std::tie(b.mode, b.backend, b.scenario_id);
  });
  const auto report = metrics::aggregate(results);
  write_text_file_atomic(
    dir / "report.json", metrics::canonical_dump(report_document(suite_name, results, report)));
  write_text_file_atomic(dir / "report.csv", report_csv(report));
  write_text_file_atomic(dir / "safety.csv", safety_table_csv(report));
  write_text_file_atomic(dir / "false_alarms.csv", false_alarm_table_csv(report));
  write_text_file_atomic(dir / "traversal.csv", traversal_table_csv(report));
  write_text_file_atomic(dir / "episodes.csv", episodes_csv(results));
  return report;
}

std::vector<metrics::EpisodeResult> load_results(const std::filesystem::path & dir)
{
  std::vector<std::filesystem::path> paths;
  for (const auto & entry : std::filesystem::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().filename() == "result.json") {
      paths.push_back(entry.path());
    }
  }
  std::sort(paths.begin(), paths.end());
  std::vector<metrics::EpisodeResult> out;
  out.reserve(paths.size());
  for (const auto & p : paths) {
    out.push_back(metrics::episode_result_from_json(nlohmann::json::parse(read_text_file(p))));
  }
  return out;
}

}  // namespace vpi::harness
