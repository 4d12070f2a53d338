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

#include "vpi/perception/kinematic_json.hpp"
#include "vpi/perception/scene_description.hpp"
#include "vpi/perception/trajectory.hpp"
#include "vpi/perception/trajectory_csv.hpp"
#include "vpi/intent/rule_backend.hpp"
#include "vpi/sim/episode.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace vpi::perception
{
namespace
{

core::WorldState world(std::int64_t tick, double vx, double py)
{
  return core::WorldState::make(
    tick, 0.05, {-20.0 + 0.5 * static_cast<double>(tick), 0.0}, {vx, 0.0}, {0.0, py},
    {0.0, 0.0}, {1.0, 0.0}, 2.0);
}

TEST(Trajectory, FiniteDifferenceVelocity)
{
  const auto v = estimate_ped_velocity({0.0, -3.9}, {0.0, -4.0}, 0.05);
  EXPECT_NEAR(v.y(), 2.0, 1e-12);
  EXPECT_EQ(v.x(), 0.0);
  const auto first = make_sample(world(0, 10.0, -4.0), std::nullopt, 0.05);
  EXPECT_EQ(first.v_ped_y, 0.0);
  const auto second = make_sample(world(1, 10.0, -3.9), core::Vec2{0.0, -4.0}, 0.05);
  EXPECT_NEAR(second.v_ped_y, 2.0, 1e-9);
}

TEST(Trajectory, BufferRequiresContiguousFrames)
{
  TrajectoryBuffer b;
  b.append(make_sample(world(0, 10.0, -4.0), std::nullopt, 0.05));
  EXPECT_THROW(b.append(make_sample(world(2, 10.0, -4.0), std::nullopt, 0.05)), core::ContractViolation);
  b.append(make_sample(world(1, 10.0, -4.0), std::nullopt, 0.05));
  EXPECT_EQ(b.size(), 2u);
}

TEST(Trajectory, TriggerConditionAndLatch)
{
  const sim::Geometry g;
  TrajectoryBuffer b;
  EXPECT_TRUE(check_trigger(14.9, {-17.0, 0.0}, b, g));
  EXPECT_FALSE(check_trigger(15.0, {-17.0, 0.0}, b, g));
  EXPECT_FALSE(check_trigger(10.0, {-30.0, 0.0}, b, g));
  b.latch_trigger();
  EXPECT_FALSE(check_trigger(10.0, {-17.0, 0.0}, b, g));
  b.reset_trigger();
  EXPECT_TRUE(check_trigger(10.0, {-17.0, 0.0}, b, g));
}

TEST(Trajectory, FixedThreeDecimals)
{
  EXPECT_EQ(format_fixed3(1.23456), "1.235");
  EXPECT_EQ(format_fixed3(-0.0001), "0.000");
  EXPECT_DOUBLE_EQ(quantize3(2.0004), 2.0);
}

TrajectoryLog sample_log()
{
  sim::ScenarioSpec spec;
  spec.id = "empty";
  spec.vehicle_speed = core::kmh_to_ms(28.2);
  const intent::RuleBackend rule;
  return quantized(sim::run_episode(spec, rule, {}).trajectory);
}

TEST(KinematicJson, RoundTripsTruncatedBuffer)
{
  auto log = sample_log();
  // Truncate at the point where the no-pedestrian window starts.
  std::size_t cut = 0;
  while (cut < log.size() && log[cut].x_veh < -15.0) {
    ++cut;
  }
  log.resize(cut + 1);
  const auto text = export_kinematic_json(log);
  EXPECT_EQ(parse_kinematic_json(text), log);
  EXPECT_THROW(export_kinematic_json({}), std::invalid_argument);
}

TEST(KinematicJson, FieldOrderAndPrecision)
{
  TrajectorySample s;
  s.frame = 3;
  s.x_veh = 1.0;
  s.d = 12.3456;
  const std::vector<TrajectorySample> one{s};
  const auto text = export_kinematic_json(one);
  EXPECT_NE(text.find("\"frame\":3"), std::string::npos);
  EXPECT_NE(text.find("\"d\":12.346"), std::string::npos);
  EXPECT_LT(text.find("x_veh"), text.find("y_veh"));
  EXPECT_LT(text.find("v_ped_y"), text.find("\"d\""));
}

TEST(TrajectoryCsv, RoundTrip)
{
  const auto log = sample_log();
  std::stringstream ss;
  write_trajectory_csv(ss, log);
  EXPECT_EQ(read_trajectory_csv(ss), log);
}

TEST(TrajectoryCsv, SchemaErrorsNameTheLocation)
{
  const std::string header = std::string(kTrajectoryCsvHeader) + "\n";
  {
    std::stringstream ss("frame,x_veh,y_veh,v_veh_x,v_veh_y,x_ped,y_ped,v_ped_x,v_ped_y,dist\n");
    try {
      read_trajectory_csv(ss);
      FAIL();
    } catch (const CsvSchemaError & e) {
      EXPECT_EQ(e.row(), 1u);
      EXPECT_EQ(e.column(), "d");
    }
  }
  {
    std::stringstream ss(header + "0,1,0,1,0,0,0,0,0,5.000\n1,1,0,1,0,0,0,0,0,abc\n");
    try {
      read_trajectory_csv(ss);
      FAIL();
    } catch (const CsvSchemaError & e) {
      EXPECT_EQ(e.row(), 3u);
      EXPECT_EQ(e.column(), "d");
    }
  }
  {
    std::stringstream ss(header + "0,1,0,1,0,0,0,0,0,5.000\n2,1,0,1,0,0,0,0,0,5.000\n");
    EXPECT_THROW(read_trajectory_csv(ss), CsvSchemaError);
  }
  {
    std::stringstream ss(header + "0,1,0,1,0,0,0,0,0,5.000\n1,1,0,1,0");
    EXPECT_THROW(read_trajectory_csv(ss), CsvSchemaError);
  }
  {
    std::stringstream ss(header + "0,1,0,1,0,0,0,0,0,-1.000\n");
    EXPECT_THROW(read_trajectory_csv(ss), CsvSchemaError);
  }
}

TEST(SceneDescription, DeterministicAndBounded)
{
  SceneFacts f;
  f.demographic = core::Demographic::Senior;
  f.kind = sim::PedestrianKind::HesitateThenCross;
  f.phase = sim::MotionPhase::Pausing;
  f.pedestrian_pos = {0.0, -6.0};
  f.vehicle_pos = {-15.0, 0.0};
  const auto a = synthesize_scene_description(f);
  EXPECT_EQ(a, synthesize_scene_description(f));
  EXPECT_LE(a.size(), kSceneDescriptionMaxChars);
  EXPECT_NE(a.find("senior"), std::string::npos);
  f.demographic = core::Demographic::Child;
  EXPECT_NE(synthesize_scene_description(f).find("child"), std::string::npos);
}

}  // namespace
}  // namespace vpi::perception
