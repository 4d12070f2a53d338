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

#ifndef VPI__INTENT__DECISION_HPP_
#define VPI__INTENT__DECISION_HPP_

#include "vpi/core/types.hpp"
#include "vpi/perception/trajectory.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace vpi::intent
{

enum class BackendTag { Rule, Oracle, Llm };

std::string_view to_string(BackendTag tag) noexcept;
std::optional<BackendTag> parse_backend_tag(std::string_view text);

enum class FallbackReason { None, InvalidOutput, Transport, PromptBudget };

std::string_view to_string(FallbackReason reason) noexcept;

/// Joint intent / demographic output of any backend, with its rationale sections.
struct IntentDecision
{
  core::IntentClass intent{core::IntentClass::NonYielding};
  core::Demographic demographic{core::Demographic::Child};
  std::string visual_analysis;
  std::string kinematic_analysis;
  std::string reason;
  BackendTag backend{BackendTag::Rule};
  bool fallback_used{false};
  FallbackReason fallback_reason{FallbackReason::None};
};

/// Conservative stand-in for ambiguous, invalid or missing output: Non-Yielding with the
/// demographic that carries the largest safety multiplier.
IntentDecision make_fallback(BackendTag backend, FallbackReason reason, std::string detail);

/// Everything a backend may look at when invoked by the episode loop.
struct InferenceContext
{
  const perception::TrajectoryBuffer * buffer{nullptr};
  std::string scene_description;
  /// Scenario metadata. Only the scripted oracle reads the ground-truth intent.
  core::Demographic scenario_demographic{core::Demographic::Adult};
  core::IntentClass ground_truth_intent{core::IntentClass::NonYielding};
  std::uint64_t episode_seed{0};
};

/// Pluggable intent-inference boundary. Implementations must be safe to call concurrently
/// from independent episodes.
class IntentBackend
{
public:
  virtual ~IntentBackend() = default;

  virtual IntentDecision classify(const InferenceContext & context) const = 0;
  virtual BackendTag tag() const noexcept = 0;

  /// True for threshold detectors that must be re-evaluated every tick after the trigger
  /// instead of once at the trigger.
  virtual bool evaluates_every_tick() const noexcept { return false; }
};

}  // namespace vpi::intent

#endif  // VPI__INTENT__DECISION_HPP_
