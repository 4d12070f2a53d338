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

#ifndef VPI__INTENT__RESPONSE_PARSER_HPP_
#define VPI__INTENT__RESPONSE_PARSER_HPP_

#include "vpi/intent/decision.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace vpi::intent
{

/// Labelled sections found in a raw completion. Absent labels stay empty optionals.
struct ResponseSections
{
  std::optional<std::string> visual_analysis;
  std::optional<std::string> kinematic_analysis;
  std::optional<std::string> decision;
  std::optional<std::string> reason;
  std::optional<std::string> demographic;
  bool duplicate_label{false};
};

/// Splits a completion into its labelled sections. A label must open a line; markdown
/// decoration (`#`, `*`, `>`, `-`) in front of it or around it is tolerated.
ResponseSections split_sections(std::string_view raw);

/// Intent named by a DECISION section, or nullopt when it names none, both, or a negated form.
std::optional<core::IntentClass> parse_decision_text(std::string_view text);

/// Demographic named by free text, or nullopt unless exactly one category is mentioned.
std::optional<core::Demographic> scan_demographic(std::string_view text);

/// Total parse of a four-field response. Any missing, duplicated or ambiguous field yields the
/// conservative fallback.
IntentDecision parse_response(std::string_view raw, BackendTag backend = BackendTag::Llm);

}  // namespace vpi::intent

#endif  // VPI__INTENT__RESPONSE_PARSER_HPP_
