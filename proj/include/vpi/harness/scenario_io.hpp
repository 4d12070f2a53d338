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

#ifndef VPI__HARNESS__SCENARIO_IO_HPP_
#define VPI__HARNESS__SCENARIO_IO_HPP_

#include "vpi/sim/episode.hpp"

#include <json.hpp>

#include <filesystem>
#include <span>
#include <vector>

namespace vpi::harness
{

nlohmann::json to_json(const sim::Geometry & geometry);
/// Missing keys keep their defaults.
sim::Geometry geometry_from_json(const nlohmann::json & j, sim::Geometry base = {});

nlohmann::json to_json(const sim::PedestrianScript & script);
sim::PedestrianScript pedestrian_from_json(const nlohmann::json & j);

nlohmann::json to_json(const sim::ScenarioSpec & spec);
/// Parses and validates a scenario.
sim::ScenarioSpec scenario_from_json(const nlohmann::json & j);

nlohmann::json scenarios_to_json(std::span<const sim::ScenarioSpec> specs);
std::vector<sim::ScenarioSpec> scenarios_from_json(const nlohmann::json & j);

std::vector<sim::ScenarioSpec> load_scenarios(const std::filesystem::path & path);
void save_scenarios(const std::filesystem::path & path, std::span<const sim::ScenarioSpec> specs);

/// Reads a whole file; throws std::runtime_error naming the path on failure.
std::string read_text_file(const std::filesystem::path & path);
/// Writes through a temporary sibling and renames, so readers never see a partial file.
void write_text_file_atomic(const std::filesystem::path & path, const std::string & text);

}  // namespace vpi::harness

#endif  // VPI__HARNESS__SCENARIO_IO_HPP_
