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

#include "vpi/metrics/ttc.hpp"

#include "vpi/core/vec2.hpp"

#include <algorithm>

namespace vpi::metrics
{

std::optional<double> time_to_collision(double d, double d_dot) noexcept
{
  if (!(d_dot < 0.0)) {
    return std::nullopt;
  }
  return d / -d_dot;
}

std::vector<TtcSample> ttc_stream(
  std::span<const perception::TrajectorySample> trajectory, int window, double dt)
{
  if (window < 1 || !(dt > 0.0)) {
    throw core::ContractViolation("ttc_stream: window must be >= 1 and dt positive");
  }
  std::vector<TtcSample> out;
  const auto w = static_cast<std::size_t>(window);
  if (trajectory.size() < w + 1) {
    return out;
  }
  out.reserve(trajectory.size() - w);
  for (std::size_t i = w; i < trajectory.size(); ++i) {
    TtcSample s;
    s.tick = trajectory[i].frame;
    s.d = trajectory[i].d;
    s.d_dot = (trajectory[i].d - trajectory[i - w].d) / (static_cast<double>(window) * dt);
    s.ttc = time_to_collision(s.d, s.d_dot);
    out.push_back(s);
  }
  return out;
}

double episode_min_ttc(std::span<const TtcSample> stream) noexcept
{
  double best = kInfiniteTtc;
  for (const auto & s : stream) {
    if (s.ttc) {
      best = std::min(best, *s.ttc);
    }
  }
  return best;
}

bool is_conflict(double min_ttc, double threshold) noexcept { return min_ttc < threshold; }

}  // namespace vpi::metrics
