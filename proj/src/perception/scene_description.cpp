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

#include "vpi/perception/scene_description.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace vpi::perception
{

namespace
{

constexpr double kStationarySpeed = 0.05;  // m/s
constexpr double kCurbBand = 0.25;         // m either side of the curb line

const char * age_phrase(core::Demographic d)
{
  switch (d) {
    case core::Demographic::Child:
      return "a child (small stature, short stride)";
    case core::Demographic::Adult:
      return "an adult (average adult stature, upright gait)";
    case core::Demographic::Senior:
      return "a senior (older adult, slightly stooped posture)";
  }
  return "an adult";
}

std::string location_phrase(const SceneFacts & f)
{
  const double lateral = std::abs(f.pedestrian_pos.y() - f.geometry.lane_center_y);
  if (std::abs(lateral - f.geometry.sidewalk_y) <= kCurbBand) {
    return "at the curb at the edge of the marked crosswalk";
  }
  if (lateral > f.geometry.sidewalk_y) {
    return "on the sidewalk behind the curb, near the marked crosswalk";
  }
  if (lateral <= f.geometry.lane_half_width) {
    return "in the roadway inside the marked crosswalk, within the ego lane";
  }
  return "in the roadway inside the marked crosswalk, between the curb and the ego lane";
}

}  // namespace

std::string synthesize_scene_description(const SceneFacts & f)
{
  const double speed = f.pedestrian_vel.norm();
  const bool moving = speed >= kStationarySpeed;

  std::string motion;
  std::string orientation;
  std::string gaze;
  if (moving) {
    const char * pace = speed >= 2.5 ? "brisk" : (speed >= 1.2 ? "steady" : "slow");
    motion = fmt::format("walking at a {} pace", pace);
    const bool lateral_motion = std::abs(f.pedestrian_vel.y()) >= std::abs(f.pedestrian_vel.x());
    if (!lateral_motion) {
      orientation = "oriented parallel to the roadway";
      gaze = "looking along the sidewalk";
    } else if (f.pedestrian_vel.y() * f.direction > 0.0) {
      orientation = "oriented toward the roadway, body facing across the lane";
      gaze = "head turned toward the crossing path";
    } else {
      orientation = "oriented away from the roadway, stepping back toward the sidewalk";
      gaze = "looking back toward the sidewalk";
    }
  } else if (f.phase == sim::MotionPhase::Pausing) {
    motion = "pausing mid-step, standing with weight shifted forward";
    orientation = "oriented toward the roadway";
    gaze = "glancing toward the approaching vehicle";
  } else {
    motion = "standing still";
    orientation = "oriented parallel to the roadway";
    gaze = "looking toward the approaching traffic";
  }

  const double ahead = f.pedestrian_pos.x() - f.vehicle_pos.x();
  const double offset = f.pedestrian_pos.y() - f.geometry.lane_center_y;
  const char * side = offset < 0.0 ? "right" : "left";

  auto text = fmt::format(
    "Front-view scene at an urban junction with a marked crosswalk across the ego lane. "
    "Pedestrian count: one. The pedestrian appears to be {}. "
    "Position: {}, about {:.0f} m ahead of the vehicle and {:.1f} m to the {} of the lane "
    "centre. Motion: {}. Body orientation: {}. Gaze: {}. "
    "No other pedestrians, vehicles or visual distractions are visible near the crosswalk.",
    age_phrase(f.demographic), location_phrase(f), std::max(0.0, ahead), std::abs(offset), side,
    motion, orientation, gaze);
  if (text.size() > kSceneDescriptionMaxChars) {
    text.resize(kSceneDescriptionMaxChars);
  }
  return text;
}

}  // namespace vpi::perception
