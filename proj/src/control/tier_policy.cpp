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

#include "vpi/control/tier_policy.hpp"

#include "vpi/core/vec2.hpp"

#include <algorithm>
#include <cmath>

namespace vpi::control
{

namespace
{
constexpr double kBoundaryEps = 1e-9;
}

TierPolicy::TierPolicy(double base, std::vector<double> boundary_factors, std::vector<double> decel_g)
: base_(base), factors_(std::move(boundary_factors)), decel_(std::move(decel_g))
{
  if (!(base_ > 0.0) || !std::isfinite(base_)) {
    throw core::ContractViolation("tier base distance must be positive");
  }
  if (factors_.empty() || factors_.size() != decel_.size()) {
    throw core::ContractViolation("tier policy needs one deceleration per boundary");
  }
  double prev_factor = 0.0;
  double prev_decel = 2.0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (!(factors_[i] > prev_factor)) {
      throw core::ContractViolation("tier boundaries must be strictly increasing");
    }
    if (!(decel_[i] > 0.0) || decel_[i] > 1.0 || decel_[i] > prev_decel) {
      throw core::ContractViolation("tier decelerations must lie in (0, 1] g and not increase");
    }
    prev_factor = factors_[i];
    prev_decel = decel_[i];
  }
}

TierPolicy TierPolicy::tiered(double base)
{
  return TierPolicy(base, {0.5, 1.0, 1.5, 2.0}, {1.0, 0.7, 0.4, 0.2});
}

TierPolicy TierPolicy::single_tier(double base, double decel_g)
{
  return TierPolicy(base, {1.0}, {decel_g});
}

double TierPolicy::boundary(std::size_t band, double alpha) const
{
  return base_ * alpha * factors_.at(band);
}

std::vector<double> TierPolicy::boundaries(double alpha) const
{
  std::vector<double> out;
  out.reserve(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    out.push_back(boundary(i, alpha));
  }
  return out;
}

TierSelection TierPolicy::select(double d, double alpha) const
{
  if (!(d >= 0.0) || !std::isfinite(d)) {
    throw core::ContractViolation("tier lookup needs a finite non-negative distance");
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw core::ContractViolation("tier lookup needs a positive multiplier");
  }
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (d < boundary(i, alpha) - kBoundaryEps) {
      return {i, decel_[i], false};
    }
  }
  return {factors_.size(), 0.0, true};
}

double tier_for_distance(double d, double alpha, const TierPolicy & policy)
{
  return policy.select(d, alpha).decel_g;
}

double brake_input(double decel_g)
{
  if (!std::isfinite(decel_g) || std::abs(decel_g) > 1.0 + 1e-12) {
    throw core::ContractViolation("commanded deceleration exceeds 1 g");
  }
  return std::min(1.0, std::abs(decel_g));
}

}  // namespace vpi::control
