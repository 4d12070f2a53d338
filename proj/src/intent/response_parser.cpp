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

#include "vpi/intent/response_parser.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <regex>
#include <sstream>

namespace vpi::intent
{

namespace
{

std::string trim(std::string_view s)
{
  const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  auto b = std::find_if_not(s.begin(), s.end(), is_space);
  auto e = std::find_if_not(s.rbegin(), s.rend(), is_space).base();
  return b < e ? std::string(b, e) : std::string();
}

std::string lower(std::string_view s)
{
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

const std::regex & label_regex()
{
  static const std::regex re(
    R"(^[\s#*>\-]*(visual[ _]analysis|kinematic[ _]analysis|decision|reason|demographic)[\s*_]*:[\s*_]*(.*)$)",
    std::regex::icase | std::regex::ECMAScript);
  return re;
}

std::optional<std::string> * slot_for(ResponseSections & s, const std::string & label)
{
  const auto l = lower(label);
  if (l.starts_with("visual")) {
    return &s.visual_analysis;
  }
  if (l.starts_with("kinematic")) {
    return &s.kinematic_analysis;
  }
  if (l == "decision") {
    return &s.decision;
  }
  if (l == "reason") {
    return &s.reason;
  }
  return &s.demographic;
}

}  // namespace

ResponseSections split_sections(std::string_view raw)
{
  ResponseSections out;
  std::optional<std::string> * current = nullptr;
  std::istringstream in{std::string(raw)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    std::smatch m;
    if (std::regex_match(line, m, label_regex())) {
      current = slot_for(out, m[1].str());
      if (current->has_value()) {
        out.duplicate_label = true;
      }
      *current = m[2].str();
      continue;
    }
    if (current != nullptr) {
      **current += "\n" + line;
    }
  }
  for (auto * s : {&out.visual_analysis, &out.kinematic_analysis, &out.decision, &out.reason,
                   &out.demographic}) {
    if (s->has_value()) {
      // Strip trailing markdown emphasis left on the same line as the label.
      auto t = trim(**s);
      while (!t.empty() && (t.back() == '*' || t.back() == '_')) {
        t.pop_back();
      }
      *s = trim(t);
    }
  }
  return out;
}

std::optional<core::IntentClass> parse_decision_text(std::string_view text)
{
  static const std::regex re(R"(\b(non[\s_-]?|not[\s_-]+)?yielding\b)", std::regex::icase);
  bool yielding = false;
  bool non_yielding = false;
  const std::string s(text);
  for (auto it = std::sregex_iterator(s.begin(), s.end(), re); it != std::sregex_iterator();
       ++it) {
    const auto prefix = lower((*it)[1].str());
    if (prefix.empty()) {
      yielding = true;
    } else if (prefix.starts_with("non")) {
      non_yielding = true;
    } else {
      return std::nullopt;
    }
  }
  if (yielding == non_yielding) {
    return std::nullopt;
  }
  return yielding ? core::IntentClass::Yielding : core::IntentClass::NonYielding;
}

std::optional<core::Demographic> scan_demographic(std::string_view text)
{
  static const std::regex older(R"(\b(older|elderly)[\s-]+adults?\b)", std::regex::icase);
  static const std::regex words(
    R"(\b(child|children|kid|adult|adults|senior|seniors|elderly)\b)", std::regex::icase);
  const std::string s = std::regex_replace(std::string(text), older, "senior");

  std::array<bool, 3> seen{};
  for (auto it = std::sregex_iterator(s.begin(), s.end(), words); it != std::sregex_iterator();
       ++it) {
    const auto w = lower((*it)[1].str());
    if (w.starts_with("child") || w == "kid") {
      seen[0] = true;
    } else if (w.starts_with("adult")) {
      seen[1] = true;
    } else {
      seen[2] = true;
    }
  }
  if (std::count(seen.begin(), seen.end(), true) != 1) {
    return std::nullopt;
  }
  if (seen[0]) {
    return core::Demographic::Child;
  }
  return seen[1] ? core::Demographic::Adult : core::Demographic::Senior;
}

IntentDecision parse_response(std::string_view raw, BackendTag backend)
{
  const auto fail = [&](std::string detail) {
    return make_fallback(backend, FallbackReason::InvalidOutput, std::move(detail));
  };
  if (trim(raw).empty()) {
    return fail("empty response");
  }
  const auto s = split_sections(raw);
  if (s.duplicate_label) {
    return fail("duplicated section label");
  }
  const std::array<std::pair<const char *, const std::optional<std::string> *>, 4> required{{
    {"VISUAL_ANALYSIS", &s.visual_analysis},
    {"KINEMATIC_ANALYSIS", &s.kinematic_analysis},
    {"DECISION", &s.decision},
    {"REASON", &s.reason},
  }};
  for (const auto & [name, field] : required) {
    if (!field->has_value() || (*field)->empty()) {
      return fail(std::string("missing or empty ") + name);
    }
  }

  const auto intent = parse_decision_text(*s.decision);
  if (!intent) {
    return fail("ambiguous DECISION");
  }

  std::optional<core::Demographic> demographic;
  if (s.demographic.has_value()) {
    demographic = scan_demographic(*s.demographic);
    if (!demographic) {
      return fail("ambiguous DEMOGRAPHIC");
    }
  } else {
    demographic = scan_demographic(*s.visual_analysis);
    if (!demographic) {
      return fail("no single demographic in VISUAL_ANALYSIS");
    }
  }

  IntentDecision d;
  d.intent = *intent;
  d.demographic = *demographic;
  d.visual_analysis = *s.visual_analysis;
  d.kinematic_analysis = *s.kinematic_analysis;
  d.reason = *s.reason;
  d.backend = backend;
  return d;
}

}  // namespace vpi::intent
