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

#include "vpi/intent/prompt.hpp"

#include "vpi/perception/kinematic_json.hpp"

#include <fmt/format.h>

namespace vpi::intent
{

PromptBudgetExceeded::PromptBudgetExceeded(
  std::vector<std::pair<std::string, std::size_t>> segments, std::size_t budget)
: std::runtime_error([&] {
    std::size_t total = 0;
    std::string detail;
    for (const auto & [name, size] : segments) {
      total += size;
      detail += fmt::format(" {}={}", name, size);
    }
    return fmt::format(
      "prompt of {} characters exceeds the budget of {}; segment sizes:{}", total, budget,
      detail);
  }()),
  segments_(std::move(segments))
{
}

const std::string & system_prompt()
{
  static const std::string text =
    "You are the pedestrian-intent reasoning module of an automated vehicle approaching an "
    "urban junction. You receive a textual description of the front-camera view and the "
    "kinematic trajectory of the ego vehicle and one pedestrian.\n"
    "\n"
    "Task: decide whether the pedestrian will yield to the vehicle (wait, stop or step back) "
    "or will not yield (enter or keep crossing the vehicle's path), and identify the "
    "pedestrian's apparent age group.\n"
    "\n"
    "Inputs:\n"
    "- Visual description: pedestrian position relative to the crosswalk, body orientation, "
    "gaze, posture and age cues.\n"
    "- Kinematic data: JSON array sampled at 20 Hz, one object per frame with fields frame, "
    "x_veh, y_veh, v_veh_x, v_veh_y, x_ped, y_ped, v_ped_x, v_ped_y (metres and metres per "
    "second in the world frame) and d, the bumper-to-pedestrian distance in metres.\n"
    "- Reference cases: annotated real-world interactions, given before the current query.\n"
    "\n"
    "Output format (plain text, exactly these labelled fields, in this order):\n"
    "VISUAL_ANALYSIS: position relative to the crosswalk, body orientation with respect to the "
    "roadway, gaze direction and limb positioning; state the apparent age group (child, adult "
    "or senior).\n"
    "KINEMATIC_ANALYSIS: velocity magnitude trend, direction consistency, closure rate of d and "
    "any sudden change in motion.\n"
    "DECISION: exactly one of Yielding or Non-Yielding.\n"
    "REASON: the causal link from the observations above to the decision.\n"
    "DEMOGRAPHIC: exactly one of Child, Adult or Senior.";
  return text;
}

std::string render_exemplar_input(const Exemplar & exemplar)
{
  return fmt::format(
    "{}\nVisual description:\n{}\n\nKinematic data:\n{}", kExemplarMarker,
    exemplar.visual_description, perception::export_kinematic_json(exemplar.kinematic_log));
}

std::string render_exemplar_answer(const Exemplar & exemplar)
{
  const auto & a = exemplar.annotation;
  return fmt::format(
    "VISUAL_ANALYSIS: {}\nKINEMATIC_ANALYSIS: {}\nDECISION: {}\nREASON: {}\nDEMOGRAPHIC: {}",
    a.visual_analysis, a.kinematic_analysis, a.decision, a.reason,
    core::to_string(exemplar.demographic));
}

std::string render_query(std::string_view visual_description, std::string_view kinematic_json)
{
  return fmt::format(
    "{}\nVisual description:\n{}\n\nKinematic data:\n{}", kQueryMarker, visual_description,
    kinematic_json);
}

std::vector<ChatMessage> build_prompt(
  std::string_view visual_description, std::string_view kinematic_json,
  std::span<const Exemplar> exemplars, std::size_t char_budget)
{
  const auto ordered = canonical_exemplar_order(exemplars);

  std::vector<ChatMessage> messages;
  messages.reserve(2 + 2 * ordered.size());
  messages.push_back({"system", system_prompt()});
  for (const auto & e : ordered) {
    messages.push_back({"user", render_exemplar_input(e)});
    messages.push_back({"assistant", render_exemplar_answer(e)});
  }
  messages.push_back({"user", render_query(visual_description, kinematic_json)});

  std::size_t total = 0;
  for (const auto & m : messages) {
    total += m.content.size();
  }
  if (total > char_budget) {
    std::vector<std::pair<std::string, std::size_t>> segments;
    segments.emplace_back("system", messages.front().content.size());
    for (std::size_t i = 0; i < ordered.size(); ++i) {
      segments.emplace_back(
        "exemplar:" + ordered[i].id,
        messages[1 + 2 * i].content.size() + messages[2 + 2 * i].content.size());
    }
    segments.emplace_back("query", messages.back().content.size());
    throw PromptBudgetExceeded(std::move(segments), char_budget);
  }
  return messages;
}

nlohmann::json messages_to_json(std::span<const ChatMessage> messages)
{
  auto out = nlohmann::json::array();
  for (const auto & m : messages) {
    out.push_back({{"role", m.role}, {"content", m.content}});
  }
  return out;
}

}  // namespace vpi::intent
