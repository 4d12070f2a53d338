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

#include "vpi/intent/exemplar.hpp"

#include "vpi/perception/kinematic_json.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <array>
#include <fstream>
#include <optional>

namespace vpi::intent
{

Exemplar exemplar_from_json(const nlohmann::json & j)
{
  Exemplar e;
  e.id = j.at("id").get<std::string>();
  const auto demo = core::parse_demographic(j.at("demographic").get<std::string>());
  if (!demo) {
    throw ExemplarSetError("exemplar " + e.id + ": unknown demographic");
  }
  e.demographic = *demo;
  const auto label = core::parse_intent(j.at("intent_label").get<std::string>());
  if (!label) {
    throw ExemplarSetError("exemplar " + e.id + ": unknown intent_label");
  }
  e.intent_label = *label;
  e.visual_description = j.at("visual_description").get<std::string>();
  for (const auto & s : j.at("kinematic_log")) {
    e.kinematic_log.push_back(perception::sample_from_json(s));
  }
  if (e.kinematic_log.empty()) {
    throw ExemplarSetError("exemplar " + e.id + ": empty kinematic_log");
  }
  const auto & a = j.at("reasoning_annotation");
  e.annotation.visual_analysis = a.at("visual_analysis").get<std::string>();
  e.annotation.kinematic_analysis = a.at("kinematic_analysis").get<std::string>();
  e.annotation.decision = a.at("decision").get<std::string>();
  e.annotation.reason = a.at("reason").get<std::string>();
  return e;
}

nlohmann::json exemplar_to_json(const Exemplar & e)
{
  nlohmann::json log = nlohmann::json::array();
  for (const auto & s : e.kinematic_log) {
    log.push_back(
      {{"frame", s.frame}, {"x_veh", s.x_veh}, {"y_veh", s.y_veh}, {"v_veh_x", s.v_veh_x},
       {"v_veh_y", s.v_veh_y}, {"x_ped", s.x_ped}, {"y_ped", s.y_ped}, {"v_ped_x", s.v_ped_x},
       {"v_ped_y", s.v_ped_y}, {"d", s.d}});
  }
  return {
    {"id", e.id},
    {"demographic", core::to_string(e.demographic)},
    {"intent_label", core::to_string(e.intent_label)},
    {"visual_description", e.visual_description},
    {"kinematic_log", log},
    {"reasoning_annotation",
     {{"visual_analysis", e.annotation.visual_analysis},
      {"kinematic_analysis", e.annotation.kinematic_analysis},
      {"decision", e.annotation.decision},
      {"reason", e.annotation.reason}}}};
}

std::vector<Exemplar> canonical_exemplar_order(std::span<const Exemplar> exemplars)
{
  constexpr std::array<core::IntentClass, 2> kIntentOrder = {
    core::IntentClass::Yielding, core::IntentClass::NonYielding};
  std::vector<Exemplar> out;
  std::vector<std::string> missing;
  for (const auto intent : kIntentOrder) {
    for (const auto demo : core::kAllDemographics) {
      const auto matches = std::count_if(exemplars.begin(), exemplars.end(), [&](const auto & e) {
        return e.demographic == demo && e.intent_label == intent;
      });
      const auto cell = fmt::format("{}-{}", core::to_string(demo), core::to_string(intent));
      if (matches == 0) {
        missing.push_back(cell);
        continue;
      }
      if (matches > 1) {
        throw ExemplarSetError("exemplar set has more than one " + cell + " exemplar");
      }
      out.push_back(*std::find_if(exemplars.begin(), exemplars.end(), [&](const auto & e) {
        return e.demographic == demo && e.intent_label == intent;
      }));
    }
  }
  if (!missing.empty()) {
    throw ExemplarSetError(
      fmt::format("exemplar set incomplete, missing: {}", fmt::join(missing, ", ")));
  }
  return out;
}

std::vector<Exemplar> load_exemplar_dir(const std::filesystem::path & dir)
{
  if (!std::filesystem::is_directory(dir)) {
    throw ExemplarSetError("exemplar directory not found: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto & entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<Exemplar> loaded;
  for (const auto & file : files) {
    std::ifstream is(file);
    try {
      loaded.push_back(exemplar_from_json(nlohmann::json::parse(is)));
    } catch (const nlohmann::json::exception & ex) {
      throw ExemplarSetError(file.string() + ": " + ex.what());
    }
  }
  return canonical_exemplar_order(loaded);
}

}  // namespace vpi::intent
