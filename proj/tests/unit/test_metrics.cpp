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

#include "vpi/core/rng.hpp"
#include "vpi/metrics/aggregate.hpp"
#include "vpi/metrics/episode_metrics.hpp"
#include "vpi/metrics/ttc.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

namespace vpi::metrics
{
namespace
{

perception::TrajectoryLog approach(double d0, double step, std::size_t n, double vx = 5.0)
{
  perception::TrajectoryLog log;
  for (std::size_t i = 0; i < n; ++i) {
    perception::TrajectorySample s;
    s.frame = static_cast<std::int64_t>(i);
    s.x_veh = -40.0 + vx * 0.05 * static_cast<double>(i);
    s.v_veh_x = vx;
    s.d = std::max(0.0, d0 - step * static_cast<double>(i));
    log.push_back(s);
  }
  return log;
}

TEST(Ttc, PointExamples)
{
  EXPECT_DOUBLE_EQ(*time_to_collision(10.0, -5.0), 2.0);
  EXPECT_EQ(time_to_collision(10.0, 0.0), std::nullopt);
  EXPECT_EQ(time_to_collision(10.0, 1.0), std::nullopt);
}

TEST(Ttc, StreamUsesTrailingWindow)
{
  const auto log = approach(20.0, 0.25, 30);  // closing at 5 m/s
  const auto stream = ttc_stream(log);
  ASSERT_EQ(stream.size(), 25u);
  EXPECT_EQ(stream.front().tick, 5);
  EXPECT_NEAR(stream.front().d_dot, -5.0, 1e-9);
  EXPECT_NEAR(*stream.front().ttc, (20.0 - 1.25) / 5.0, 1e-9);
  EXPECT_NEAR(episode_min_ttc(stream), (20.0 - 0.25 * 29) / 5.0, 1e-9);
  EXPECT_TRUE(ttc_stream(approach(20.0, 0.25, 5)).empty());
}

TEST(Ttc, UndefinedWhenNeverClosing)
{
  const auto stream = ttc_stream(approach(20.0, -0.1, 40));
  EXPECT_EQ(episode_min_ttc(stream), kInfiniteTtc);
  EXPECT_FALSE(is_conflict(episode_min_ttc(stream)));
}

TEST(Ttc, ConflictThresholdIsStrict)
{
  EXPECT_TRUE(is_conflict(1.9));
  EXPECT_FALSE(is_conflict(2.1));
  EXPECT_FALSE(is_conflict(2.0));
}

// Independent oracle: direct pairwise scan over the raw log.
double brute_min_ttc(const perception::TrajectoryLog & log)
{
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 5; i < log.size(); ++i) {
    const double rate = (log[i].d - log[i - 5].d) / 0.25;
    if (rate < 0.0) {
      best = std::min(best, log[i].d / -rate);
    }
  }
  return best;
}

TEST(Ttc, MatchesBruteForceOnRandomLogs)
{
  core::Rng rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    perception::TrajectoryLog log;
    double d = rng.uniform(5.0, 40.0);
    const auto n = 1 + rng.index(120);
    for (std::size_t i = 0; i < n; ++i) {
      perception::TrajectorySample s;
      s.frame = static_cast<std::int64_t>(i);
      d = std::max(0.0, d + rng.uniform(-0.6, 0.3));
      s.d = d;
      log.push_back(s);
    }
    EXPECT_DOUBLE_EQ(episode_min_ttc(ttc_stream(log)), brute_min_ttc(log));
  }
}

TEST(SpeedMaintenance, TenPercentBand)
{
  const double nominal = core::kmh_to_ms(30.0);
  EXPECT_TRUE(speed_maintained(approach(30.0, 0.1, 20, core::kmh_to_ms(27.5)), nominal));
  EXPECT_FALSE(speed_maintained(approach(30.0, 0.1, 20, core::kmh_to_ms(26.0)), nominal));
  EXPECT_FALSE(speed_maintained(approach(30.0, 0.1, 20, core::kmh_to_ms(33.5)), nominal));
  EXPECT_THROW(speed_maintained(approach(30.0, 0.1, 2), 0.0), core::ContractViolation);
}

TEST(Traversal, MeasuredFromTriggerToEgress)
{
  const sim::Geometry g;
  // Vehicle passes x = -15 (65 m before the exit) at frame k, then egresses.
  perception::TrajectoryLog log;
  for (int i = 0; i <= 200; ++i) {
    perception::TrajectorySample s;
    s.frame = i;
    s.x_veh = -25.0 + 0.4 * i;
    s.v_veh_x = 8.0;
    s.d = 1000.0;
    log.push_back(s);
  }
  ASSERT_EQ(infer_termination(log, g), sim::Termination::Egress);
  EXPECT_EQ(trigger_tick(log, g), 25);
  EXPECT_NEAR(*traversal_time(log, sim::Termination::Egress, g), (200 - 25) * 0.05, 1e-12);
  EXPECT_EQ(traversal_time(log, sim::Termination::Timeout, g), std::nullopt);

  const auto m = compute_log_metrics(log, sim::Termination::Egress, g);
  EXPECT_TRUE(m.speed_maintained);
  EXPECT_EQ(m.min_ttc, kInfiniteTtc);
  EXPECT_FALSE(m.conflict);
}

TEST(LogMetrics, CollisionAndJsonRoundTrip)
{
  const sim::Geometry g;
  const auto log = approach(5.0, 0.25, 21);  // ends at d = 0
  EXPECT_EQ(infer_termination(log, g), sim::Termination::Collision);
  const auto m = compute_log_metrics(log, sim::Termination::Collision, g);
  EXPECT_TRUE(m.collision);
  EXPECT_TRUE(m.conflict);
  EXPECT_DOUBLE_EQ(m.min_separation, 0.0);
  EXPECT_FALSE(m.speed_maintained);
  EXPECT_EQ(log_metrics_from_json(to_json(m)), m);

  LogMetrics open;
  open.min_ttc = kInfiniteTtc;
  EXPECT_TRUE(to_json(open).at("min_ttc").is_null());
  EXPECT_EQ(log_metrics_from_json(to_json(open)), open);
}

EpisodeResult result(core::Demographic demo, core::IntentClass truth,
                     std::optional<core::IntentClass> predicted, double ttc = 3.0)
{
  EpisodeResult r;
  r.scenario_id = "s";
  r.mode = "adaptive";
  r.backend = "oracle";
  r.complexity = "clear";
  r.truth_demographic = demo;
  r.truth_intent = truth;
  r.predicted_intent = predicted;
  r.predicted_demographic = demo;
  r.log.min_ttc = ttc;
  r.log.conflict = ttc < 2.0;
  r.log.termination = sim::Termination::Egress;
  r.log.traversal_time = 8.0;
  return r;
}

TEST(Aggregate, FalseNegativeAndFalseAlarmRates)
{
  std::vector<EpisodeResult> rs;
  for (int i = 0; i < 40; ++i) {
    rs.push_back(result(core::Demographic::Child, core::IntentClass::NonYielding,
                        i < 3 ? core::IntentClass::Yielding : core::IntentClass::NonYielding));
  }
  for (int i = 0; i < 108; ++i) {
    rs.push_back(result(core::Demographic::Adult, core::IntentClass::Yielding,
                        i < 3 ? core::IntentClass::NonYielding : core::IntentClass::Yielding));
  }
  const auto rep = aggregate(rs);
  const auto * child = rep.find("adaptive", "oracle", "Child");
  ASSERT_NE(child, nullptr);
  EXPECT_DOUBLE_EQ(*child->false_negative_rate, 0.075);
  EXPECT_EQ(child->false_alarm_rate, std::nullopt);
  const auto * all = rep.find("adaptive", "oracle", "All");
  ASSERT_NE(all, nullptr);
  EXPECT_NEAR(*all->false_alarm_rate, 3.0 / 108.0, 1e-15);
  EXPECT_NEAR(*all->false_alarm_rate, 0.028, 0.0005);
  EXPECT_EQ(all->episodes, 148u);
  EXPECT_DOUBLE_EQ(*all->accuracy, 142.0 / 148.0);
}

TEST(Aggregate, MissingPredictionCountsAsYielding)
{
  const std::vector<EpisodeResult> rs{
    result(core::Demographic::Adult, core::IntentClass::NonYielding, std::nullopt),
    result(core::Demographic::Adult, core::IntentClass::Yielding, std::nullopt)};
  const auto * s = aggregate(rs).find("adaptive", "oracle", "Adult");
  EXPECT_EQ(s->false_negatives, 1u);
  EXPECT_EQ(s->false_positives, 0u);
  EXPECT_EQ(s->classified, 0u);
  EXPECT_EQ(s->accuracy, std::nullopt);
}

TEST(Aggregate, SummaryStatistics)
{
  const auto s = summarize({1.0, 2.0, 3.0, 4.0});
  EXPECT_DOUBLE_EQ(*s.mean, 2.5);
  EXPECT_NEAR(*s.sd, std::sqrt(5.0 / 3.0), 1e-15);
  EXPECT_EQ(summarize({1.0}).sd, std::nullopt);
  EXPECT_EQ(summarize({}).mean, std::nullopt);
}

TEST(Aggregate, UnboundedTtcExcludedFromMean)
{
  const std::vector<EpisodeResult> rs{
    result(core::Demographic::Senior, core::IntentClass::Yielding, core::IntentClass::Yielding, 1.0),
    result(core::Demographic::Senior, core::IntentClass::Yielding, core::IntentClass::Yielding, 3.0),
    result(core::Demographic::Senior, core::IntentClass::Yielding, core::IntentClass::Yielding,
           kInfiniteTtc)};
  const auto * s = aggregate(rs).find("adaptive", "oracle", "Senior");
  EXPECT_EQ(s->min_ttc.n, 2u);
  EXPECT_DOUBLE_EQ(*s->min_ttc.mean, 2.0);
  EXPECT_EQ(s->ttc_unbounded, 1u);
  EXPECT_EQ(s->conflicts, 1u);
}

std::vector<EpisodeResult> random_results(std::uint64_t seed, std::size_t n)
{
  core::Rng rng(seed);
  std::vector<EpisodeResult> rs;
  for (std::size_t i = 0; i < n; ++i) {
    const auto demo = core::kAllDemographics[rng.index(3)];
    const auto truth = rng.bernoulli(0.5) ? core::IntentClass::Yielding : core::IntentClass::NonYielding;
    const auto pred = rng.bernoulli(0.5) ? core::IntentClass::Yielding : core::IntentClass::NonYielding;
    auto r = result(demo, truth, pred, rng.uniform(0.1, 5.0));
    r.mode = rng.bernoulli(0.5) ? "adaptive" : "uniform";
    r.log.traversal_time = rng.uniform(7.0, 15.0);
    rs.push_back(r);
  }
  return rs;
}

TEST(Aggregate, InvariantUnderPermutation)
{
  auto rs = random_results(5, 300);
  const auto base = aggregate(rs);
  std::mt19937_64 g(17);
  for (int k = 0; k < 5; ++k) {
    std::shuffle(rs.begin(), rs.end(), g);
    EXPECT_EQ(aggregate(rs), base);
  }
}

TEST(Aggregate, MergeEqualsWhole)
{
  const auto rs = random_results(6, 200);
  ReportAccumulator a;
  ReportAccumulator b;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    (i % 3 == 0 ? a : b).add(rs[i]);
  }
  b.merge(a);
  EXPECT_EQ(b.finalize(), aggregate(rs));
}

TEST(EpisodeResultJson, RoundTrip)
{
  for (const auto & r : random_results(8, 20)) {
    EXPECT_EQ(episode_result_from_json(to_json(r)), r);
  }
  auto r = result(core::Demographic::Child, core::IntentClass::NonYielding, std::nullopt);
  r.alpha_override = 1.6;
  r.predicted_demographic.reset();
  EXPECT_EQ(episode_result_from_json(to_json(r)), r);
  auto j = to_json(r);
  j["truth_intent"] = "Maybe";
  EXPECT_THROW(episode_result_from_json(j), std::invalid_argument);
}

}  // namespace
}  // namespace vpi::metrics
