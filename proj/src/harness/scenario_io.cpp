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

#include "vpi/harness/scenario_io.hpp"

#include "vpi/metrics/episode_metrics.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vpi::harness
{

nlohmann::json to_json(const sim::Geometry & g)
{
  return {
    {"crosswalk_x", g.crosswalk_x},       {"junction_entry_x", g.junction_entry_x},
    {"junction_exit_x", g.junction_exit_x}, {"approach_margin", g.approach_margin},
    {"lane_center_y", g.lane_center_y},   {"lane_half_width", g.lane_half_width},
    {"sidewalk_y", g.sidewalk_y},
  };
}

sim::Geometry geometry_from_json(const nlohmann::json & j, sim::Geometry g)
{
  g.crosswalk_x = j.value("crosswalk_x", g.crosswalk_x);
  g.junction_entry_x = j.value("junction_entry_x", g.junction_entry_x);
  g.junction_exit_x = j.value("junction_exit_x", g.junction_exit_x);
  g.approach_margin = j.value("approach_margin", g.approach_margin);
  g.lane_center_y = j.value("lane_center_y", g.lane_center_y);
  g.lane_half_width = j.value("lane_half_width", g.lane_half_width);
  g.sidewalk_y = j.value("sidewalk_y", g.sidewalk_y);
  g.validate();
  return g;
}

nlohmann::json to_json(const sim::PedestrianScript & s)
{
  return {
    {"kind", std::string(sim::to_string(s.kind))},
    {"walk_speed", s.walk_speed},
    {"pause_duration", s.pause_duration},
    {"start_y", s.start_y},
    {"direction", s.direction},
    {"start_delay", s.start_delay},
  };
}

sim::PedestrianScript pedestrian_from_json(const nlohmann::json & j)
{
  sim::PedestrianScript s;
  const auto kind_text = j.at("kind").get<std::string>();
  const auto kind = sim::parse_pedestrian_kind(kind_text);
  if (!kind) {
    throw std::invalid_argument("unknown pedestrian kind: " + kind_text);
  }
  s.kind = *kind;
  s.walk_speed = j.value("walk_speed", s.walk_speed);
  s.pause_duration = j.value("pause_duration", s.pause_duration);
  s.start_y = j.value("start_y", s.start_y);
  s.direction = j.value("direction", s.direction);
  s.start_delay = j.value("start_delay", s.start_delay);
  return s;
}

nlohmann::json to_json(const sim::ScenarioSpec & spec)
{
  nlohmann::json j;
  j["id"] = spec.id;
  j["vehicle_speed"] = spec.vehicle_speed;
  j["vehicle_start_x"] = spec.vehicle_start_x;
  j["pedestrian"] = spec.pedestrian ? to_json(*spec.pedestrian) : nlohmann::json(nullptr);
  j["demographic"] = std::string(core::to_string(spec.demographic));
  j["ground_truth"] = std::string(core::to_string(spec.ground_truth()));
  j["geometry"] = to_json(spec.geometry);
  j["seed"] = spec.seed;
  j["complexity"] = spec.complexity;
  return j;
}

sim::ScenarioSpec scenario_from_json(const nlohmann::json & j)
{
  sim::ScenarioSpec spec;
  spec.id = j.at("id").get<std::string>();
  spec.vehicle_speed = j.at("vehicle_speed").get<double>();
  spec.vehicle_start_x = j.value("vehicle_start_x", spec.vehicle_start_x);
  if (j.contains("pedestrian") && !j.at("pedestrian").is_null()) {
    spec.pedestrian = pedestrian_from_json(j.at("pedestrian"));
  }
  const auto demo_text = j.at("demographic").get<std::string>();
  const auto demo = core::parse_demographic(demo_text);
  if (!demo) {
    throw std::invalid_argument("unknown demographic: " + demo_text);
  }
  spec.demographic = *demo;
  if (j.contains("geometry")) {
    spec.geometry = geometry_from_json(j.at("geometry"));
  }
  spec.seed = j.value("seed", std::uint64_t{0});
  spec.complexity = j.value("complexity", spec.complexity);
  if (j.contains("ground_truth")) {
    const auto truth = core::parse_intent(j.at("ground_truth").get<std::string>());
    if (!truth || *truth != spec.ground_truth()) {
      throw std::invalid_argument(
        "scenario " + spec.id + ": ground_truth disagrees with the pedestrian script");
    }
  }
  spec.validate();
  return spec;
}

nlohmann::json scenarios_to_json(std::span<const sim::ScenarioSpec> specs)
{
  auto arr = nlohmann::json::array();
  for (const auto & s : specs) {
    arr.push_back(to_json(s));
  }
  return {{"scenarios", arr}};
}

std::vector<sim::ScenarioSpec> scenarios_from_json(const nlohmann::json & j)
{
  const auto & arr = j.is_array() ? j : j.at("scenarios");
  std::vector<sim::ScenarioSpec> out;
  out.reserve(arr.size());
  for (const auto & s : arr) {
    out.push_back(scenario_from_json(s));
  }
  return out;
}

std::string read_text_file(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file_atomic(const std::filesystem::path & path, const std::string & text)
{
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot write " + tmp.string());
    }
    out << text;
    if (!out.flush()) {
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

std::vector<sim::ScenarioSpec> load_scenarios(const std::filesystem::path & path)
{
  return scenarios_from_json(nlohmann::json::parse(read_text_file(path)));
}

void save_scenarios(const std::filesystem::path & path, std::span<const sim::ScenarioSpec> specs)
{
  write_text_file_atomic(path, metrics::canonical_dump(scenarios_to_json(specs)));
}

}  // namespace vpi::harness
