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

#include "vpi/intent/rule_backend.hpp"

#include <fmt/format.h>

namespace vpi::intent
{

double closing_speed_toward_bumper(
  const perception::TrajectorySample & sample, double bumper_offset)
{
  const auto bumper = perception::sample_bumper(sample, bumper_offset);
  const core::Vec2 ped{sample.x_ped, sample.y_ped};
  const core::Vec2 vel{sample.v_ped_x, sample.v_ped_y};
  const auto to_bumper = bumper - ped;
  const double len = to_bumper.norm();
  if (len <= 0.0) {
    // Coincident points: every direction is "toward" the bumper.
    return vel.norm();
  }
  return vel.dot(to_bumper * (1.0 / len));
}

IntentDecision rule_classify(
  const perception::TrajectoryBuffer & buffer, core::Demographic demographic,
  const RuleThresholds & thresholds)
{
  const auto & s = buffer.latest();
  const double closing = closing_speed_toward_bumper(s, thresholds.bumper_offset);
  const bool near = s.d < thresholds.distance;
  const bool fast = closing > thresholds.closing_speed;

  IntentDecision out;
  out.backend = BackendTag::Rule;
  out.demographic = demographic;
  out.intent = near && fast ? core::IntentClass::NonYielding : core::IntentClass::Yielding;
  out.visual_analysis = "not used by the threshold detector";
  out.kinematic_analysis = fmt::format(
    "frame {}: bumper distance {:.3f} m (gate < {:.2f} m), closing speed {:.3f} m/s "
    "(gate > {:.2f} m/s)",
    s.frame, s.d, thresholds.distance, closing, thresholds.closing_speed);
  out.reason = near && fast ? "both distance and closing-speed gates exceeded"
                            : (near ? "closing-speed gate not met" : "distance gate not met");
  return out;
}

IntentDecision RuleBackend::classify(const InferenceContext & context) const
{
  if (context.buffer == nullptr) {
    throw core::ContractViolation("RuleBackend: inference context has no trajectory buffer");
  }
  return rule_classify(*context.buffer, context.scenario_demographic, thresholds_);
}

}  // namespace vpi::intent
