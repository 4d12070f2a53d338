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

#include "vpi/metrics/aggregate.hpp"

#include <algorithm>
#include <cmath>

namespace vpi::metrics
{

std::string StratumKey::label() const { return mode + "/" + backend + "/" + demographic; }

SummaryStat summarize(std::vector<double> values)
{
  std::sort(values.begin(), values.end());
  SummaryStat s;
  s.n = values.size();
  if (values.empty()) {
    return s;
  }
  double sum = 0.0;
  for (const double v : values) {
    sum += v;
  }
  const double mean = sum / static_cast<double>(values.size());
  s.mean = mean;
  if (values.size() >= 2) {
    double ss = 0.0;
    for (const double v : values) {
      ss += (v - mean) * (v - mean);
    }
    s.sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

const StratumReport * AggregateReport::find(
  const std::string & mode, const std::string & backend, const std::string & demographic) const
{
  const auto it = strata.find({mode, backend, demographic});
  return it == strata.end() ? nullptr : &it->second;
}

void ReportAccumulator::add(const EpisodeResult & result)
{
  raw_[{result.mode, result.backend, std::string(core::to_string(result.truth_demographic))}]
    .results.push_back(result);
  raw_[{result.mode, result.backend, "All"}].results.push_back(result);
}

void ReportAccumulator::merge(const ReportAccumulator & other)
{
  for (const auto & [key, raw] : other.raw_) {
    auto & dst = raw_[key].results;
    dst.insert(dst.end(), raw.results.begin(), raw.results.end());
  }
}

namespace
{

std::optional<double> ratio(std::size_t num, std::size_t den)
{
  if (den == 0) {
    return std::nullopt;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

StratumReport reduce(const std::vector<EpisodeResult> & results)
{
  StratumReport r;
  std::vector<double> ttc;
  std::vector<double> trav_y;
  std::vector<double> trav_ny;
  std::vector<double> trav_all;
  for (const auto & e : results) {
    ++r.episodes;
    r.conflicts += e.log.conflict ? 1 : 0;
    r.collisions += e.log.collision ? 1 : 0;
    r.braking_events += e.braking_events;
    r.fallbacks += e.fallback_used ? 1 : 0;

    // An episode that never consulted a backend acted as if the pedestrian yields.
    const auto predicted = e.predicted_intent.value_or(core::IntentClass::Yielding);
    if (e.truth_intent == core::IntentClass::NonYielding) {
      ++r.nonyielding_truth;
      r.false_negatives += predicted == core::IntentClass::Yielding ? 1 : 0;
    } else {
      ++r.yielding_truth;
      r.false_positives += predicted == core::IntentClass::NonYielding ? 1 : 0;
      r.yielding_speed_maintained += e.log.speed_maintained ? 1 : 0;
    }
    if (e.predicted_intent) {
      ++r.classified;
      r.correct_intent += *e.predicted_intent == e.truth_intent ? 1 : 0;
    }
    if (e.predicted_demographic) {
      r.correct_demographic += *e.predicted_demographic == e.truth_demographic ? 1 : 0;
    }

    if (std::isfinite(e.log.min_ttc)) {
      ttc.push_back(e.log.min_ttc);
    } else {
      ++r.ttc_unbounded;
    }
    if (e.log.traversal_time) {
      trav_all.push_back(*e.log.traversal_time);
      (e.truth_intent == core::IntentClass::Yielding ? trav_y : trav_ny)
        .push_back(*e.log.traversal_time);
    } else {
      ++r.not_completed;
    }
  }
  r.conflict_rate = ratio(r.conflicts, r.episodes);
  r.false_negative_rate = ratio(r.false_negatives, r.nonyielding_truth);
  r.false_alarm_rate = ratio(r.false_positives, r.yielding_truth);
  r.accuracy = ratio(r.correct_intent, r.classified);
  r.demographic_accuracy = ratio(r.correct_demographic, r.classified);
  r.speed_maintenance_rate = ratio(r.yielding_speed_maintained, r.yielding_truth);
  if (r.episodes > 0) {
    r.mean_braking_events =
      static_cast<double>(r.braking_events) / static_cast<double>(r.episodes);
  }
  r.min_ttc = summarize(std::move(ttc));
  r.traversal_yielding = summarize(std::move(trav_y));
  r.traversal_nonyielding = summarize(std::move(trav_ny));
  r.traversal_all = summarize(std::move(trav_all));
  return r;
}

nlohmann::json opt(const std::optional<double> & v)
{
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json to_json(const SummaryStat & s)
{
  return {{"n", s.n}, {"mean", opt(s.mean)}, {"sd", opt(s.sd)}};
}

}  // namespace

AggregateReport ReportAccumulator::finalize() const
{
  AggregateReport report;
  for (const auto & [key, raw] : raw_) {
    report.strata.emplace(key, reduce(raw.results));
  }
  return report;
}

AggregateReport aggregate(std::span<const EpisodeResult> results)
{
  ReportAccumulator acc;
  for (const auto & r : results) {
    acc.add(r);
  }
  return acc.finalize();
}

nlohmann::json to_json(const AggregateReport & report)
{
  auto strata = nlohmann::json::array();
  for (const auto & [key, r] : report.strata) {
    nlohmann::json j;
    j["mode"] = key.mode;
    j["backend"] = key.backend;
    j["demographic"] = key.demographic;
    j["episodes"] = r.episodes;
    j["conflicts"] = r.conflicts;
    j["collisions"] = r.collisions;
    j["nonyielding_truth"] = r.nonyielding_truth;
    j["false_negatives"] = r.false_negatives;
    j["yielding_truth"] = r.yielding_truth;
    j["false_positives"] = r.false_positives;
    j["classified"] = r.classified;
    j["correct_intent"] = r.correct_intent;
    j["correct_demographic"] = r.correct_demographic;
    j["braking_events"] = r.braking_events;
    j["fallbacks"] = r.fallbacks;
    j["yielding_speed_maintained"] = r.yielding_speed_maintained;
    j["not_completed"] = r.not_completed;
    j["conflict_rate"] = opt(r.conflict_rate);
    j["false_negative_rate"] = opt(r.false_negative_rate);
    j["false_alarm_rate"] = opt(r.false_alarm_rate);
    j["accuracy"] = opt(r.accuracy);
    j["demographic_accuracy"] = opt(r.demographic_accuracy);
    j["speed_maintenance_rate"] = opt(r.speed_maintenance_rate);
    j["mean_braking_events"] = opt(r.mean_braking_events);
    j["min_ttc"] = to_json(r.min_ttc);
    j["ttc_unbounded"] = r.ttc_unbounded;
    j["traversal_yielding"] = to_json(r.traversal_yielding);
    j["traversal_nonyielding"] = to_json(r.traversal_nonyielding);
    j["traversal_all"] = to_json(r.traversal_all);
    strata.push_back(std::move(j));
  }
  return {{"strata", strata}};
}

}  // namespace vpi::metrics
