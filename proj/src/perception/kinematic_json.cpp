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

#include <fmt/format.h>

#include <stdexcept>

namespace vpi::perception
{

std::string export_kinematic_json(std::span<const TrajectorySample> samples)
{
  if (samples.empty()) {
    throw std::invalid_argument("export_kinematic_json: trajectory buffer is empty");
  }
  std::string out = "[\n";
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto & s = samples[i];
    fmt::format_to(
      std::back_inserter(out),
      R"({{"frame":{},"x_veh":{},"y_veh":{},"v_veh_x":{},"v_veh_y":{},"x_ped":{},"y_ped":{},)"
      R"("v_ped_x":{},"v_ped_y":{},"d":{}}})",
      s.frame, format_fixed3(s.x_veh), format_fixed3(s.y_veh), format_fixed3(s.v_veh_x),
      format_fixed3(s.v_veh_y), format_fixed3(s.x_ped), format_fixed3(s.y_ped),
      format_fixed3(s.v_ped_x), format_fixed3(s.v_ped_y), format_fixed3(s.d));
    out += i + 1 < samples.size() ? ",\n" : "\n";
  }
  out += "]";
  return out;
}

TrajectorySample sample_from_json(const nlohmann::json & j)
{
  TrajectorySample s;
  s.frame = j.at("frame").get<std::int64_t>();
  s.x_veh = j.at("x_veh").get<double>();
  s.y_veh = j.at("y_veh").get<double>();
  s.v_veh_x = j.at("v_veh_x").get<double>();
  s.v_veh_y = j.at("v_veh_y").get<double>();
  s.x_ped = j.at("x_ped").get<double>();
  s.y_ped = j.at("y_ped").get<double>();
  s.v_ped_x = j.at("v_ped_x").get<double>();
  s.v_ped_y = j.at("v_ped_y").get<double>();
  s.d = j.at("d").get<double>();
  return s;
}

TrajectoryLog parse_kinematic_json(std::string_view text)
{
  const auto doc = nlohmann::json::parse(text);
  if (!doc.is_array()) {
    throw std::invalid_argument("parse_kinematic_json: expected a JSON array");
  }
  TrajectoryLog out;
  out.reserve(doc.size());
  for (const auto & item : doc) {
    out.push_back(sample_from_json(item));
  }
  return out;
}

}  // namespace vpi::perception
