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

#include "vpi/harness/suite.hpp"

#include "vpi/core/rng.hpp"
#include "vpi/harness/scenario_io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace vpi::harness
{

namespace
{

constexpr std::uint64_t kScenarioSeedStream = 0x5ce0;
constexpr std::uint64_t kScenarioDrawStream = 0x5ce1;
constexpr double kStartBehindCurb = 2.0;  // m
constexpr double kVehicleStartX = -80.0;  // m

}  // namespace

std::string_view to_string(SuiteKind kind) noexcept
{
  switch (kind) {
    case SuiteKind::IntentEval:
      return "IntentEval";
    case SuiteKind::DemographicEval:
      return "DemographicEval";
    case SuiteKind::SafetyEval:
      return "SafetyEval";
    case SuiteKind::Custom:
      return "Custom";
  }
  return "Custom";
}

std::optional<SuiteKind> parse_suite_kind(std::string_view text)
{
  for (const auto k :
       {SuiteKind::IntentEval, SuiteKind::DemographicEval, SuiteKind::SafetyEval, SuiteKind::Custom}) {
    if (to_string(k) == text) {
      return k;
    }
  }
  return std::nullopt;
}

Range SuiteConfig::effective_speed_kmh() const
{
  if (speed_kmh) {
    return *speed_kmh;
  }
  return kind == SuiteKind::SafetyEval ? Range{25.0, 35.0} : Range{15.0, 21.0};
}

void SuiteConfig::validate() const
{
  const auto check_range = [](const Range & r, const char * what, double min, double max) {
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.lo > r.hi || r.lo < min || r.hi > max) {
      throw SuiteConfigError(fmt::format("{} must satisfy {} <= lo <= hi <= {}", what, min, max));
    }
  };
  if (name.empty() || name.find_first_of("/\\") != std::string::npos) {
    throw SuiteConfigError("suite name must be a non-empty path component");
  }
  if (modes.empty()) {
    throw SuiteConfigError("at least one controller mode is required");
  }
  check_range(effective_speed_kmh(), "speed_kmh", 1.0, 144.0);
  check_range(walk_speed, "walk_speed", 0.5, 4.0);
  check_range(curb_arrival_dist, "curb_arrival_dist", 0.0, 200.0);
  if (kind == SuiteKind::SafetyEval && count == 0) {
    throw SuiteConfigError("SafetyEval count must be positive");
  }
  if (kind == SuiteKind::Custom) {
    if (composition.empty()) {
      throw SuiteConfigError("Custom suites need a non-empty composition");
    }
    for (const auto & e : composition) {
      if (e.count == 0) {
        throw SuiteConfigError("composition entries must have a positive count");
      }
    }
  }
  if (alpha_override && !(*alpha_override > 0.0)) {
    throw SuiteConfigError("alpha_override must be positive");
  }
  for (const double a : sweep_alphas) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw SuiteConfigError("sweep multipliers must be positive");
    }
  }
  if (parallel < 1) {
    throw SuiteConfigError("parallel must be >= 1");
  }
  calibration.validate();
  geometry.validate();
}

namespace
{

Range range_from_json(const nlohmann::json & j, const char * key)
{
  if (!j.is_array() || j.size() != 2) {
    throw SuiteConfigError(std::string(key) + " must be a two-element array [lo, hi]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

nlohmann::json range_to_json(const Range & r) { return nlohmann::json::array({r.lo, r.hi}); }

template <typename T, typename Parser>
T parse_enum(const std::string & text, Parser parser, const char * what)
{
  const auto v = parser(text);
  if (!v) {
    throw SuiteConfigError(fmt::format("unknown {}: {}", what, text));
  }
  return *v;
}

intent::OracleCalibration calibration_from_json(const nlohmann::json & j)
{
  intent::OracleCalibration c;
  const auto preset = j.value("preset", std::string("custom"));
  if (preset == "demographic_table") {
    c = intent::OracleCalibration::demographic_table();
  } else if (preset == "ground_truth") {
    c = intent::OracleCalibration::ground_truth();
  } else if (preset != "custom") {
    throw SuiteConfigError("unknown calibration preset: " + preset);
  }
  if (j.contains("misclassification")) {
    for (const auto & [demo_text, row] : j.at("misclassification").items()) {
      const auto demo = parse_enum<core::Demographic>(demo_text, core::parse_demographic, "demographic");
      for (const auto & [intent_text, p] : row.items()) {
        const auto truth = parse_enum<core::IntentClass>(intent_text, core::parse_intent, "intent");
        c.set_flip_probability(demo, truth, p.get<double>());
      }
    }
  }
  c.demographic_misdetection = j.value("demographic_misdetection", c.demographic_misdetection);
  c.seed = j.value("seed", c.seed);
  return c;
}

nlohmann::json calibration_to_json(const intent::OracleCalibration & c)
{
  nlohmann::json mis;
  for (const auto d : core::kAllDemographics) {
    for (const auto i : {core::IntentClass::Yielding, core::IntentClass::NonYielding}) {
      mis[std::string(core::to_string(d))][std::string(core::to_string(i))] =
        c.flip_probability(d, i);
    }
  }
  return {
    {"preset", "custom"},
    {"misclassification", mis},
    {"demographic_misdetection", c.demographic_misdetection},
    {"seed", c.seed},
  };
}

}  // namespace

SuiteConfig suite_config_from_json(const nlohmann::json & j, SuiteConfig c)
{
  if (!j.is_object()) {
    throw SuiteConfigError("suite configuration must be a JSON object");
  }
  c.name = j.value("name", c.name);
  if (j.contains("kind")) {
    c.kind = parse_enum<SuiteKind>(j.at("kind").get<std::string>(), parse_suite_kind, "suite kind");
  }
  c.master_seed = j.value("master_seed", c.master_seed);
  if (j.contains("backend")) {
    c.backend = parse_enum<intent::BackendTag>(
      j.at("backend").get<std::string>(), intent::parse_backend_tag, "backend");
  }
  if (j.contains("modes")) {
    c.modes.clear();
    for (const auto & m : j.at("modes")) {
      c.modes.push_back(parse_enum<control::ControllerKind>(
        m.get<std::string>(), control::parse_controller_kind, "mode"));
    }
  }
  if (j.contains("calibration")) {
    c.calibration = calibration_from_json(j.at("calibration"));
  }
  if (j.contains("speed_kmh")) {
    c.speed_kmh = range_from_json(j.at("speed_kmh"), "speed_kmh");
  }
  if (j.contains("walk_speed")) {
    c.walk_speed = range_from_json(j.at("walk_speed"), "walk_speed");
  }
  if (j.contains("curb_arrival_dist")) {
    c.curb_arrival_dist = range_from_json(j.at("curb_arrival_dist"), "curb_arrival_dist");
  }
  c.count = j.value("count", c.count);
  if (j.contains("composition")) {
    c.composition.clear();
    for (const auto & e : j.at("composition")) {
      CompositionEntry entry;
      entry.kind = parse_enum<sim::PedestrianKind>(
        e.at("kind").get<std::string>(), sim::parse_pedestrian_kind, "pedestrian kind");
      entry.demographic = parse_enum<core::Demographic>(
        e.at("demographic").get<std::string>(), core::parse_demographic, "demographic");
      entry.count = e.at("count").get<std::size_t>();
      entry.complexity = e.value("complexity", entry.complexity);
      c.composition.push_back(entry);
    }
  }
  if (j.contains("geometry")) {
    c.geometry = geometry_from_json(j.at("geometry"), c.geometry);
  }
  if (j.contains("alpha_override") && !j.at("alpha_override").is_null()) {
    c.alpha_override = j.at("alpha_override").get<double>();
  }
  if (j.contains("sweep_alphas")) {
    c.sweep_alphas = j.at("sweep_alphas").get<std::vector<double>>();
  }
  if (j.contains("endpoint")) {
    const auto & e = j.at("endpoint");
    c.endpoint.url = e.value("url", c.endpoint.url);
    c.endpoint.path = e.value("path", c.endpoint.path);
    c.endpoint.model = e.value("model", c.endpoint.model);
    c.endpoint.timeout = std::chrono::milliseconds(e.value("timeout_ms", c.endpoint.timeout.count()));
    c.endpoint.max_retries = e.value("max_retries", c.endpoint.max_retries);
    c.endpoint.initial_backoff =
      std::chrono::milliseconds(e.value("initial_backoff_ms", c.endpoint.initial_backoff.count()));
    c.endpoint.backoff_multiplier = e.value("backoff_multiplier", c.endpoint.backoff_multiplier);
    c.endpoint.max_tokens = e.value("max_tokens", c.endpoint.max_tokens);
    c.endpoint.temperature = e.value("temperature", c.endpoint.temperature);
    if (e.contains("api_key")) {
      throw SuiteConfigError("api keys are read from the environment, not the config file");
    }
  }
  c.exemplar_dir = j.value("exemplar_dir", c.exemplar_dir);
  c.parallel = j.value("parallel", c.parallel);
  c.validate();
  return c;
}

nlohmann::json to_json(const SuiteConfig & c)
{
  nlohmann::json j;
  j["name"] = c.name;
  j["kind"] = std::string(to_string(c.kind));
  j["master_seed"] = c.master_seed;
  j["backend"] = std::string(intent::to_string(c.backend));
  auto modes = nlohmann::json::array();
  for (const auto m : c.modes) {
    modes.push_back(std::string(control::to_string(m)));
  }
  j["modes"] = modes;
  j["calibration"] = calibration_to_json(c.calibration);
  j["speed_kmh"] = range_to_json(c.effective_speed_kmh());
  j["walk_speed"] = range_to_json(c.walk_speed);
  j["curb_arrival_dist"] = range_to_json(c.curb_arrival_dist);
  j["count"] = c.count;
  auto comp = nlohmann::json::array();
  for (const auto & e : c.composition) {
    comp.push_back({
      {"kind", std::string(sim::to_string(e.kind))},
      {"demographic", std::string(core::to_string(e.demographic))},
      {"count", e.count},
      {"complexity", e.complexity},
    });
  }
  j["composition"] = comp;
  j["geometry"] = to_json(c.geometry);
  j["alpha_override"] = c.alpha_override ? nlohmann::json(*c.alpha_override) : nlohmann::json(nullptr);
  j["sweep_alphas"] = c.sweep_alphas;
  j["endpoint"] = {
    {"url", c.endpoint.url},
    {"path", c.endpoint.path},
    {"model", c.endpoint.model},
    {"timeout_ms", c.endpoint.timeout.count()},
    {"max_retries", c.endpoint.max_retries},
    {"initial_backoff_ms", c.endpoint.initial_backoff.count()},
    {"backoff_multiplier", c.endpoint.backoff_multiplier},
    {"max_tokens", c.endpoint.max_tokens},
    {"temperature", c.endpoint.temperature},
  };
  j["exemplar_dir"] = c.exemplar_dir;
  j["parallel"] = c.parallel;
  return j;
}

std::vector<CompositionEntry> suite_composition(const SuiteConfig & config)
{
  using core::Demographic;
  using sim::PedestrianKind;
  std::vector<CompositionEntry> out;
  // Blocks with a kind but no fixed demographic cycle through the demographics by index.
  const auto cycled = [&](PedestrianKind kind, std::size_t n, const char * complexity) {
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back({kind, core::kAllDemographics[i % 3], 1, complexity});
    }
  };
  switch (config.kind) {
    case SuiteKind::IntentEval:
      // 63 clear, 35 moderate and 14 high-ambiguity interactions.
      cycled(PedestrianKind::NonYieldCross, 32, "clear");
      cycled(PedestrianKind::YieldStopAtCurb, 31, "clear");
      cycled(PedestrianKind::HesitateThenCross, 35, "moderate");
      cycled(PedestrianKind::FalseStart, 7, "high");
      cycled(PedestrianKind::ReverseMidCross, 7, "high");
      break;
    case SuiteKind::DemographicEval:
      for (const auto d : core::kAllDemographics) {
        out.push_back({PedestrianKind::NonYieldCross, d, 30, "clear"});
        out.push_back({PedestrianKind::HesitateThenCross, d, 10, "moderate"});
        out.push_back({PedestrianKind::YieldStopAtCurb, d, 14, "clear"});
        out.push_back({PedestrianKind::FalseStart, d, 3, "high"});
        out.push_back({PedestrianKind::ReverseMidCross, d, 3, "high"});
      }
      break;
    case SuiteKind::SafetyEval: {
      // Non-yielding to yielding in the ratio 92:108.
      const std::size_t ny = (config.count * 92 + 100) / 200;
      const std::size_t y = config.count - ny;
      const std::size_t ny_hesitate = ny * 3 / 10;
      const std::size_t y_false = y / 6;
      const std::size_t y_reverse = y / 6;
      cycled(PedestrianKind::NonYieldCross, ny - ny_hesitate, "clear");
      cycled(PedestrianKind::HesitateThenCross, ny_hesitate, "moderate");
      cycled(PedestrianKind::YieldStopAtCurb, y - y_false - y_reverse, "clear");
      cycled(PedestrianKind::FalseStart, y_false, "high");
      cycled(PedestrianKind::ReverseMidCross, y_reverse, "high");
      break;
    }
    case SuiteKind::Custom:
      out = config.composition;
      break;
  }
  return out;
}

sim::ScenarioSpec make_scenario(
  const SuiteConfig & config, const CompositionEntry & entry, std::size_t index,
  const std::string & id)
{
  core::Rng rng(core::derive_seed(config.master_seed, kScenarioDrawStream, index));
  const auto speed = config.effective_speed_kmh();
  const auto & g = config.geometry;

  sim::ScenarioSpec spec;
  spec.id = id;
  spec.seed = core::derive_seed(config.master_seed, kScenarioSeedStream, index);
  spec.geometry = g;
  spec.demographic = entry.demographic;
  spec.complexity = entry.complexity;
  spec.vehicle_start_x = kVehicleStartX;
  spec.vehicle_speed = core::kmh_to_ms(rng.uniform(speed.lo, speed.hi));

  sim::PedestrianScript script;
  script.kind = entry.kind;
  script.walk_speed = rng.uniform(config.walk_speed.lo, config.walk_speed.hi);
  script.direction = rng.bernoulli(0.5) ? 1 : -1;
  script.start_y = g.lane_center_y - script.direction * (g.sidewalk_y + kStartBehindCurb);
  const double arrival = rng.uniform(config.curb_arrival_dist.lo, config.curb_arrival_dist.hi);
  const double pause = rng.uniform(0.5, 1.5);

  // Time at which the bumper is `dist` metres short of the crosswalk at constant speed.
  const double bumper_start = spec.vehicle_start_x + core::SimConstants{}.bumper_offset;
  const auto bumper_at = [&](double dist) {
    return (g.crosswalk_x - dist - bumper_start) / spec.vehicle_speed;
  };
  const double w = script.walk_speed;
  const double to_curb = kStartBehindCurb / w;
  double delay = 0.0;
  switch (entry.kind) {
    case sim::PedestrianKind::NonYieldCross:
    case sim::PedestrianKind::FalseStart:
      delay = bumper_at(arrival) - to_curb;
      break;
    case sim::PedestrianKind::YieldStopAtCurb:
      delay = bumper_at(arrival + 8.0) - to_curb;
      break;
    case sim::PedestrianKind::HesitateThenCross:
      script.pause_duration = pause;
      delay = bumper_at(arrival) - pause - to_curb;
      break;
    case sim::PedestrianKind::ReverseMidCross: {
      // Clears the lane on the way back while the vehicle is still well upstream.
      const double out_and_back = (g.sidewalk_y + kStartBehindCurb + g.lane_half_width) / w;
      delay = bumper_at(config.curb_arrival_dist.hi + arrival - config.curb_arrival_dist.lo) -
              out_and_back;
      break;
    }
  }
  script.start_delay = std::max(0.0, delay);
  spec.pedestrian = script;
  spec.validate();
  return spec;
}

std::vector<sim::ScenarioSpec> generate_suite(const SuiteConfig & config)
{
  config.validate();
  const auto blocks = suite_composition(config);
  std::vector<sim::ScenarioSpec> out;
  std::size_t index = 0;
  for (const auto & block : blocks) {
    for (std::size_t k = 0; k < block.count; ++k) {
      out.push_back(make_scenario(config, block, index, fmt::format("{}-{:04d}", config.name, index)));
      ++index;
    }
  }
  return out;
}

}  // namespace vpi::harness
