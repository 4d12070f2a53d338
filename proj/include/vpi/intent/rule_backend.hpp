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

#ifndef VPI__INTENT__RULE_BACKEND_HPP_
#define VPI__INTENT__RULE_BACKEND_HPP_

#include "vpi/intent/decision.hpp"

namespace vpi::intent
{

struct RuleThresholds
{
  double distance{9.35};     // m, bumper distance gate
  double closing_speed{0.8}; // m/s, pedestrian speed toward the bumper
  double bumper_offset{2.0}; // m
};

/// Pedestrian velocity projected on the unit vector from the pedestrian toward the bumper.
double closing_speed_toward_bumper(
  const perception::TrajectorySample & sample, double bumper_offset);

/// Threshold detector on the latest sample only: Non-Yielding iff d < distance and the closing
/// speed exceeds closing_speed. The demographic is passed through from scenario metadata.
IntentDecision rule_classify(
  const perception::TrajectoryBuffer & buffer, core::Demographic demographic,
  const RuleThresholds & thresholds = {});

class RuleBackend final : public IntentBackend
{
public:
  explicit RuleBackend(RuleThresholds thresholds = {}) : thresholds_(thresholds) {}

  IntentDecision classify(const InferenceContext & context) const override;
  BackendTag tag() const noexcept override { return BackendTag::Rule; }
  bool evaluates_every_tick() const noexcept override { return true; }

  const RuleThresholds & thresholds() const noexcept { return thresholds_; }

private:
  RuleThresholds thresholds_;
};

}  // namespace vpi::intent

#endif  // VPI__INTENT__RULE_BACKEND_HPP_
