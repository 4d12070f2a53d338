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

#ifndef VPI__INTENT__ORACLE_BACKEND_HPP_
#define VPI__INTENT__ORACLE_BACKEND_HPP_

#include "vpi/intent/decision.hpp"

#include <array>
#include <cstdint>

namespace vpi::intent
{

/// Error model of the scripted oracle: ground truth with injected, seeded mistakes.
struct OracleCalibration
{
  /// Probability of flipping the intent, indexed [demographic][intent] in enum order.
  std::array<std::array<double, 2>, 3> misclassification{};
  /// Probability of reporting one of the two other demographics (uniformly).
  double demographic_misdetection{0.0};
  std::uint64_t seed{0};

  double flip_probability(core::Demographic d, core::IntentClass truth) const noexcept;
  void set_flip_probability(core::Demographic d, core::IntentClass truth, double p) noexcept;

  void validate() const;

  /// Error-free oracle.
  static OracleCalibration ground_truth();
  /// False-negative rates 7.5 % child, 2.5 % adult, 7.5 % senior; false-alarm rate 2.8 %.
  static OracleCalibration demographic_table();
};

IntentDecision oracle_classify(
  core::IntentClass truth_intent, core::Demographic truth_demographic,
  const OracleCalibration & calibration, std::uint64_t episode_seed);

class OracleBackend final : public IntentBackend
{
public:
  explicit OracleBackend(OracleCalibration calibration);

  IntentDecision classify(const InferenceContext & context) const override;
  BackendTag tag() const noexcept override { return BackendTag::Oracle; }

  const OracleCalibration & calibration() const noexcept { return calibration_; }

private:
  OracleCalibration calibration_;
};

}  // namespace vpi::intent

#endif  // VPI__INTENT__ORACLE_BACKEND_HPP_
