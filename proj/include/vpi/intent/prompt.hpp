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

#ifndef VPI__INTENT__PROMPT_HPP_
#define VPI__INTENT__PROMPT_HPP_

#include "vpi/intent/exemplar.hpp"

#include <json.hpp>

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vpi::intent
{

struct ChatMessage
{
  std::string role;
  std::string content;

  bool operator==(const ChatMessage &) const = default;
};

inline constexpr std::string_view kExemplarMarker = "Sample Input (Real-World Reference):";
inline constexpr std::string_view kQueryMarker = "Current Query:";

/// Character proxy (about four characters per token) for a 12k-token prompt.
inline constexpr std::size_t kPromptCharBudget = 48000;

class PromptBudgetExceeded : public std::runtime_error
{
public:
  PromptBudgetExceeded(std::vector<std::pair<std::string, std::size_t>> segments, std::size_t budget);

  const std::vector<std::pair<std::string, std::size_t>> & segments() const noexcept
  {
    return segments_;
  }

private:
  std::vector<std::pair<std::string, std::size_t>> segments_;
};

/// Role declaration, task instruction and the labelled output schema.
const std::string & system_prompt();

std::string render_exemplar_input(const Exemplar & exemplar);
std::string render_exemplar_answer(const Exemplar & exemplar);
std::string render_query(std::string_view visual_description, std::string_view kinematic_json);

/// System message, then one user/assistant pair per exemplar in canonical order, then the live
/// query. Throws ExemplarSetError for an incomplete set and PromptBudgetExceeded when the total
/// content exceeds `char_budget`.
std::vector<ChatMessage> build_prompt(
  std::string_view visual_description, std::string_view kinematic_json,
  std::span<const Exemplar> exemplars, std::size_t char_budget = kPromptCharBudget);

nlohmann::json messages_to_json(std::span<const ChatMessage> messages);

}  // namespace vpi::intent

#endif  // VPI__INTENT__PROMPT_HPP_
