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

#include "vpi/intent/decision.hpp"

namespace vpi::intent
{

std::string_view to_string(BackendTag tag) noexcept
{
  switch (tag) {
    case BackendTag::Rule:
      return "rule";
    case BackendTag::Oracle:
      return "oracle";
    case BackendTag::Llm:
      return "llm";
  }
  return "rule";
}

std::optional<BackendTag> parse_backend_tag(std::string_view text)
{
  for (const auto tag : {BackendTag::Rule, BackendTag::Oracle, BackendTag::Llm}) {
    if (to_string(tag) == text) {
      return tag;
    }
  }
  return std::nullopt;
}

std::string_view to_string(FallbackReason reason) noexcept
{
  switch (reason) {
    case FallbackReason::None:
      return "none";
    case FallbackReason::InvalidOutput:
      return "invalid_output";
    case FallbackReason::Transport:
      return "transport";
    case FallbackReason::PromptBudget:
      return "prompt_budget";
  }
  return "none";
}

IntentDecision make_fallback(BackendTag backend, FallbackReason reason, std::string detail)
{
  IntentDecision d;
  d.intent = core::IntentClass::NonYielding;
  d.demographic = core::Demographic::Child;
  d.visual_analysis = "unavailable";
  d.kinematic_analysis = "unavailable";
  d.reason = "conservative fallback (" + std::string(to_string(reason)) + "): " + detail;
  d.backend = backend;
  d.fallback_used = true;
  d.fallback_reason = reason;
  return d;
}

}  // namespace vpi::intent
