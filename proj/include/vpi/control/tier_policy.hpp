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

#ifndef VPI__CONTROL__TIER_POLICY_HPP_
#define VPI__CONTROL__TIER_POLICY_HPP_

#include <cstddef>
#include <vector>

namespace vpi::control
{

/// Selected braking band. `band` counts outward from the closest band; `band == band_count`
/// means Coast (no braking).
struct TierSelection
{
  std::size_t band{0};
  double decel_g{0.0};
  bool coast{false};

  bool operator==(const TierSelection &) const = default;
};

/// Piecewise-constant braking schedule over distance bands scaled by a safety multiplier.
/// Band i covers [base * alpha * factor[i-1], base * alpha * factor[i]) with factor[-1] = 0.
class TierPolicy
{
public:
  TierPolicy(double base, std::vector<double> boundary_factors, std::vector<double> decel_g);

  /// Four bands at {0.5, 1, 1.5, 2} x base with 1.0 g, 0.7 g, 0.4 g and 0.2 g.
  static TierPolicy tiered(double base = 9.35);
  /// One band [0, base) at the given deceleration.
  static TierPolicy single_tier(double base = 9.35, double decel_g = 1.0);

  double base() const noexcept { return base_; }
  std::size_t band_count() const noexcept { return factors_.size(); }
  const std::vector<double> & boundary_factors() const noexcept { return factors_; }
  const std::vector<double> & decelerations() const noexcept { return decel_; }

  /// Upper edge of band i for a multiplier.
  double boundary(std::size_t band, double alpha) const;
  std::vector<double> boundaries(double alpha) const;

  /// Lower-inclusive band lookup. Throws ContractViolation for negative d or non-positive alpha.
  TierSelection select(double d, double alpha) const;

private:
  double base_;
  std::vector<double> factors_;
  std::vector<double> decel_;
};

/// Commanded deceleration in g-units for the default tiered schedule; 0 means Coast.
double tier_for_distance(double d, double alpha, const TierPolicy & policy = TierPolicy::tiered());

/// Normalised brake input for a deceleration in g-units. Throws ContractViolation above 1 g.
double brake_input(double decel_g);

}  // namespace vpi::control

#endif  // VPI__CONTROL__TIER_POLICY_HPP_
