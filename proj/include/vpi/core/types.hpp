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

#ifndef VPI__CORE__TYPES_HPP_
#define VPI__CORE__TYPES_HPP_

#include <array>
#include <optional>
#include <string_view>

namespace vpi::core
{

enum class Demographic { Child, Adult, Senior };

enum class IntentClass { Yielding, NonYielding };

inline constexpr std::array<Demographic, 3> kAllDemographics = {
  Demographic::Child, Demographic::Adult, Demographic::Senior};

/// Safety-margin multiplier applied to every braking and resume distance.
double alpha_for(Demographic demographic) noexcept;

std::string_view to_string(Demographic demographic) noexcept;
std::string_view to_string(IntentClass intent) noexcept;

/// Case-insensitive; accepts "child"/"adult"/"senior".
std::optional<Demographic> parse_demographic(std::string_view text);
/// Case-insensitive; accepts "yielding" and "non-yielding" / "non yielding" / "nonyielding".
std::optional<IntentClass> parse_intent(std::string_view text);

/// SI <-> km/h at config and report boundaries only.
inline constexpr double kmh_to_ms(double kmh) noexcept { return kmh / 3.6; }
inline constexpr double ms_to_kmh(double ms) noexcept { return ms * 3.6; }

}  // namespace vpi::core

#endif  // VPI__CORE__TYPES_HPP_
