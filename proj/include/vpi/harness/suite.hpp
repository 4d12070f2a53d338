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

#ifndef VPI__HARNESS__SUITE_HPP_
#define VPI__HARNESS__SUITE_HPP_

#include "vpi/control/safety_controller.hpp"
#include "vpi/intent/decision.hpp"
#include "vpi/intent/llm_backend.hpp"
#include "vpi/intent/oracle_backend.hpp"
#include "vpi/sim/episode.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vpi::harness
{

enum class SuiteKind { IntentEval, DemographicEval, SafetyEval, Custom };
std::string_view to_string(SuiteKind kind) noexcept;
std::optional<SuiteKind> parse_suite_kind(std::string_view text);

class SuiteConfigError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// One block of a custom composition.
struct CompositionEntry
{
  sim::PedestrianKind kind{sim::PedestrianKind::NonYieldCross};
  core::Demographic demographic{core::Demographic::Adult};
  std::size_t count{0};
  std::string complexity{"clear"};
};

struct Range
{
  double lo{0.0};
  double hi{0.0};
};

struct SuiteConfig
{
  std::string name{"suite"};
  SuiteKind kind{SuiteKind::DemographicEval};
  std::uint64_t master_seed{42};
  /// Backend for the tiered modes. The rule-baseline mode always runs the rule detector.
  intent::BackendTag backend{intent::BackendTag::Oracle};
  std::vector<control::ControllerKind> modes{
    control::ControllerKind::RuleBaseline, control::ControllerKind::Uniform,
    control::ControllerKind::Adaptive};
  intent::OracleCalibration calibration{intent::OracleCalibration::demographic_table()};
  /// km/h; defaults depend on the suite kind.
  std::optional<Range> speed_kmh;
  Range walk_speed{2.0, 4.0};
  /// Bumper distance to the crosswalk (m) when a crossing pedestrian reaches the curb.
  Range curb_arrival_dist{10.0, 22.0};
  /// SafetyEval size; its intent split keeps the 92:108 ratio.
  std::size_t count{200};
  std::vector<CompositionEntry> composition;  // Custom only
  sim::Geometry geometry;
  std::optional<double> alpha_override;
  std::vector<double> sweep_alphas{1.0, 1.2, 1.4, 1.6};
  intent::EndpointConfig endpoint;
  std::string exemplar_dir;
  int parallel{1};

  Range effective_speed_kmh() const;
  void validate() const;
};

SuiteConfig suite_config_from_json(const nlohmann::json & j, SuiteConfig base = {});
nlohmann::json to_json(const SuiteConfig & config);

/// Deterministic expansion of a suite into scenarios. Scenario i draws its parameters from a
/// seed derived from (master seed, i), so the list does not depend on generation order.
std::vector<sim::ScenarioSpec> generate_suite(const SuiteConfig & config);

/// Composition blocks used by generate_suite for a suite kind.
std::vector<CompositionEntry> suite_composition(const SuiteConfig & config);

/// Builds one scenario whose pedestrian behaviour is timed against the vehicle's arrival.
sim::ScenarioSpec make_scenario(
  const SuiteConfig & config, const CompositionEntry & entry, std::size_t index,
  const std::string & id);

}  // namespace vpi::harness

#endif  // VPI__HARNESS__SUITE_HPP_
