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

#ifndef VPI__PERCEPTION__SCENE_DESCRIPTION_HPP_
#define VPI__PERCEPTION__SCENE_DESCRIPTION_HPP_

#include "vpi/core/types.hpp"
#include "vpi/core/vec2.hpp"
#include "vpi/sim/geometry.hpp"
#include "vpi/sim/pedestrian.hpp"

#include <string>

namespace vpi::perception
{

/// Ground-truth facts the scene text is rendered from.
struct SceneFacts
{
  core::Demographic demographic{core::Demographic::Adult};
  sim::PedestrianKind kind{sim::PedestrianKind::NonYieldCross};
  sim::MotionPhase phase{sim::MotionPhase::Waiting};
  core::Vec2 pedestrian_pos;
  core::Vec2 pedestrian_vel;
  core::Vec2 vehicle_pos;
  int direction{+1};
  sim::Geometry geometry;
};

inline constexpr std::size_t kSceneDescriptionMaxChars = 1200;

/// Deterministic front-camera scene text: pedestrian count, position relative to the crosswalk,
/// body orientation, motion state, apparent age group.
std::string synthesize_scene_description(const SceneFacts & facts);

}  // namespace vpi::perception

#endif  // VPI__PERCEPTION__SCENE_DESCRIPTION_HPP_
