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

#include "vpi/core/vec2.hpp"

#include <cmath>
#include <string>

namespace vpi::core
{

Vec2::Vec2(double x, double y) : x_(x), y_(y)
{
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw ContractViolation(
      "Vec2 components must be finite, got (" + std::to_string(x) + ", " + std::to_string(y) +
      ")");
  }
}

double Vec2::norm() const noexcept { return std::hypot(x_, y_); }

double distance(const Vec2 & a, const Vec2 & b) noexcept
{
  return std::hypot(a.x() - b.x(), a.y() - b.y());
}

}  // namespace vpi::core
