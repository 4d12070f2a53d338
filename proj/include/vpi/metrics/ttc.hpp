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

#ifndef VPI__METRICS__TTC_HPP_
#define VPI__METRICS__TTC_HPP_

#include "vpi/perception/trajectory.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace vpi::metrics
{

struct TtcSample
{
  std::int64_t tick{0};
  double d{0.0};
  double d_dot{0.0};
  /// Defined only while the separation shrinks.
  std::optional<double> ttc;
};

inline constexpr double kInfiniteTtc = std::numeric_limits<double>::infinity();

/// Time to contact d / -d_dot, or nullopt when d_dot >= 0.
std::optional<double> time_to_collision(double d, double d_dot) noexcept;

/// Trailing-window TTC: d_dot(t) = (d_t - d_{t-window}) / (window * dt). The first sample is
/// at index `window`; fewer than window + 1 samples give an empty stream.
std::vector<TtcSample> ttc_stream(
  std::span<const perception::TrajectorySample> trajectory, int window = 5, double dt = 0.05);

/// Minimum defined TTC, or +inf when none is defined.
double episode_min_ttc(std::span<const TtcSample> stream) noexcept;

bool is_conflict(double min_ttc, double threshold = 2.0) noexcept;

}  // namespace vpi::metrics

#endif  // VPI__METRICS__TTC_HPP_
