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

#ifndef VPI__PERCEPTION__KINEMATIC_JSON_HPP_
#define VPI__PERCEPTION__KINEMATIC_JSON_HPP_

#include "vpi/perception/trajectory.hpp"

#include <json.hpp>

#include <span>
#include <string>
#include <string_view>

namespace vpi::perception
{

/// Temporally ordered JSON array, one object per sample, keys in state-vector order and every
/// state value printed with exactly three decimals. Throws std::invalid_argument when empty.
std::string export_kinematic_json(std::span<const TrajectorySample> samples);

/// Inverse of export_kinematic_json (accepts any JSON array of sample objects).
TrajectoryLog parse_kinematic_json(std::string_view text);

TrajectorySample sample_from_json(const nlohmann::json & j);

}  // namespace vpi::perception

#endif  // VPI__PERCEPTION__KINEMATIC_JSON_HPP_
