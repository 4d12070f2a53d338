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

#ifndef VPI__INTENT__EXEMPLAR_HPP_
#define VPI__INTENT__EXEMPLAR_HPP_

#include "vpi/core/types.hpp"
#include "vpi/perception/trajectory.hpp"

#include <json.hpp>

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vpi::intent
{

struct ReasoningAnnotation
{
  std::string visual_analysis;
  std::string kinematic_analysis;
  std::string decision;
  std::string reason;
};

/// Annotated real-world interaction embedded in every prompt.
struct Exemplar
{
  std::string id;
  core::Demographic demographic{core::Demographic::Adult};
  core::IntentClass intent_label{core::IntentClass::Yielding};
  std::string visual_description;
  perception::TrajectoryLog kinematic_log;
  ReasoningAnnotation annotation;
};

class ExemplarSetError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

Exemplar exemplar_from_json(const nlohmann::json & j);
nlohmann::json exemplar_to_json(const Exemplar & exemplar);

/// Returns the six exemplars in canonical order (Child-Y, Adult-Y, Senior-Y, Child-NY,
/// Adult-NY, Senior-NY). Throws ExemplarSetError unless every (demographic x intent) cell is
/// filled exactly once.
std::vector<Exemplar> canonical_exemplar_order(std::span<const Exemplar> exemplars);

/// Loads every *.json file of a directory (one exemplar per file) and validates completeness.
std::vector<Exemplar> load_exemplar_dir(const std::filesystem::path & dir);

}  // namespace vpi::intent

#endif  // VPI__INTENT__EXEMPLAR_HPP_
