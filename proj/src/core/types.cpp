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

#include "vpi/core/types.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace vpi::core
{

namespace
{

std::string lowered(std::string_view text)
{
  std::string out;
  out.reserve(text.size());
  for (const char c : text) {
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  const auto first = out.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) {
    return {};
  }
  const auto last = out.find_last_not_of(" \t\r\n");
  return out.substr(first, last - first + 1);
}

}  // namespace

double alpha_for(Demographic demographic) noexcept
{
  switch (demographic) {
    case Demographic::Child:
      return 1.4;
    case Demographic::Adult:
      return 1.0;
    case Demographic::Senior:
      return 1.2;
  }
  return 1.0;
}

std::string_view to_string(Demographic demographic) noexcept
{
  switch (demographic) {
    case Demographic::Child:
      return "Child";
    case Demographic::Adult:
      return "Adult";
    case Demographic::Senior:
      return "Senior";
  }
  return "Adult";
}

std::string_view to_string(IntentClass intent) noexcept
{
  return intent == IntentClass::Yielding ? "Yielding" : "Non-Yielding";
}

std::optional<Demographic> parse_demographic(std::string_view text)
{
  const auto key = lowered(text);
  if (key == "child") {
    return Demographic::Child;
  }
  if (key == "adult") {
    return Demographic::Adult;
  }
  if (key == "senior") {
    return Demographic::Senior;
  }
  return std::nullopt;
}

std::optional<IntentClass> parse_intent(std::string_view text)
{
  const auto key = lowered(text);
  if (key == "yielding") {
    return IntentClass::Yielding;
  }
  if (key == "non-yielding" || key == "non yielding" || key == "nonyielding") {
    return IntentClass::NonYielding;
  }
  return std::nullopt;
}

}  // namespace vpi::core
