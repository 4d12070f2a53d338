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

#include "vpi/intent/oracle_backend.hpp"

#include "vpi/core/rng.hpp"

#include <fmt/format.h>

#include <cmath>

namespace vpi::intent
{

namespace
{

constexpr std::uint64_t kOracleStream = 0x6f7261636c65ULL;  // "oracle"

std::size_t index_of(core::Demographic d) { return static_cast<std::size_t>(d); }
std::size_t index_of(core::IntentClass i) { return static_cast<std::size_t>(i); }

core::IntentClass flipped(core::IntentClass i)
{
  return i == core::IntentClass::Yielding ? core::IntentClass::NonYielding
                                          : core::IntentClass::Yielding;
}

}  // namespace

double OracleCalibration::flip_probability(core::Demographic d, core::IntentClass truth) const noexcept
{
  return misclassification[index_of(d)][index_of(truth)];
}

void OracleCalibration::set_flip_probability(
  core::Demographic d, core::IntentClass truth, double p) noexcept
{
  misclassification[index_of(d)][index_of(truth)] = p;
}

void OracleCalibration::validate() const
{
  const auto check = [](double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw core::ContractViolation(
        fmt::format("OracleCalibration: probability {} outside [0, 1]", p));
    }
  };
  for (const auto & row : misclassification) {
    for (const double p : row) {
      check(p);
    }
  }
  check(demographic_misdetection);
}

OracleCalibration OracleCalibration::ground_truth() { return {}; }

OracleCalibration OracleCalibration::demographic_table()
{
  OracleCalibration c;
  using core::Demographic;
  using core::IntentClass;
  c.set_flip_probability(Demographic::Child, IntentClass::NonYielding, 0.075);
  c.set_flip_probability(Demographic::Adult, IntentClass::NonYielding, 0.025);
  c.set_flip_probability(Demographic::Senior, IntentClass::NonYielding, 0.075);
  for (const auto d : core::kAllDemographics) {
    c.set_flip_probability(d, IntentClass::Yielding, 0.028);
  }
  return c;
}

IntentDecision oracle_classify(
  core::IntentClass truth_intent, core::Demographic truth_demographic,
  const OracleCalibration & calibration, std::uint64_t episode_seed)
{
  calibration.validate();
  core::Rng rng(core::derive_seed(calibration.seed, kOracleStream, episode_seed));
  const double u_flip = rng.uniform01();
  const double u_demo = rng.uniform01();
  const auto other_pick = rng.index(2);

  const bool flip = u_flip < calibration.flip_probability(truth_demographic, truth_intent);
  const bool misdetect = u_demo < calibration.demographic_misdetection;

  IntentDecision out;
  out.backend = BackendTag::Oracle;
  out.intent = flip ? flipped(truth_intent) : truth_intent;
  out.demographic = truth_demographic;
  if (misdetect) {
    std::size_t k = 0;
    for (const auto d : core::kAllDemographics) {
      if (d != truth_demographic && k++ == other_pick) {
        out.demographic = d;
      }
    }
  }
  out.visual_analysis =
    fmt::format("scripted oracle: apparent age group {}", core::to_string(out.demographic));
  out.kinematic_analysis = "scripted oracle: trajectory not analysed";
  out.reason = fmt::format(
    "ground truth {}{}{}", core::to_string(truth_intent),
    flip ? ", flipped by calibrated classification error" : "",
    misdetect ? ", demographic misdetected" : "");
  return out;
}

OracleBackend::OracleBackend(OracleCalibration calibration) : calibration_(calibration)
{
  calibration_.validate();
}

IntentDecision OracleBackend::classify(const InferenceContext & context) const
{
  return oracle_classify(
    context.ground_truth_intent, context.scenario_demographic, calibration_,
    context.episode_seed);
}

}  // namespace vpi::intent
