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

#ifndef VPI__PERCEPTION__TRAJECTORY_HPP_
#define VPI__PERCEPTION__TRAJECTORY_HPP_

#include "vpi/core/vec2.hpp"
#include "vpi/core/world.hpp"
#include "vpi/sim/geometry.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vpi::perception
{

/// One logged tick: frame index plus the nine-field state vector.
struct TrajectorySample
{
  std::int64_t frame{0};
  double x_veh{0.0};
  double y_veh{0.0};
  double v_veh_x{0.0};
  double v_veh_y{0.0};
  double x_ped{0.0};
  double y_ped{0.0};
  double v_ped_x{0.0};
  double v_ped_y{0.0};
  double d{0.0};

  bool operator==(const TrajectorySample &) const = default;
};

using TrajectoryLog = std::vector<TrajectorySample>;

inline constexpr const char * kSampleFields[] = {
  "frame", "x_veh", "y_veh", "v_veh_x", "v_veh_y", "x_ped", "y_ped", "v_ped_x", "v_ped_y", "d"};

/// Finite-difference pedestrian velocity between consecutive ticks.
core::Vec2 estimate_ped_velocity(const core::Vec2 & curr, const core::Vec2 & prev, double dt);

/// Builds the logged sample for a world state. The pedestrian velocity is re-estimated from
/// positions; with no predecessor it is reported as zero.
TrajectorySample make_sample(
  const core::WorldState & world, const std::optional<core::Vec2> & prev_ped_pos, double dt);

/// Episode-scoped history plus the inference latch.
class TrajectoryBuffer
{
public:
  /// Frames must increase by exactly one; d must match the positions it was built from.
  void append(const TrajectorySample & sample);

  std::span<const TrajectorySample> samples() const noexcept { return samples_; }
  const TrajectorySample & latest() const;
  bool empty() const noexcept { return samples_.empty(); }
  std::size_t size() const noexcept { return samples_.size(); }

  bool has_triggered() const noexcept { return has_triggered_; }
  void latch_trigger() noexcept { has_triggered_ = true; }
  /// Only the resume path clears the latch.
  void reset_trigger() noexcept { has_triggered_ = false; }

private:
  TrajectoryLog samples_;
  bool has_triggered_{false};
};

/// Event-triggered inference gate: d below the activation distance, vehicle inside the
/// junction region, and no inference yet since the last resume.
bool check_trigger(
  double d, const core::Vec2 & vehicle_pos, const TrajectoryBuffer & buffer,
  const sim::Geometry & geometry, double trigger_dist = 15.0);

/// Bumper point recomputed from a logged sample (vehicle drives along +x).
core::Vec2 sample_bumper(const TrajectorySample & sample, double bumper_offset);

/// |d - separation(bumper, pedestrian)| for a logged sample.
double separation_residual(const TrajectorySample & sample, double bumper_offset);

/// Fixed three-decimal text form used by every serialised trajectory ("-0.000" is normalised).
std::string format_fixed3(double value);
/// The value a three-decimal serialisation round-trips to.
double quantize3(double value);
TrajectorySample quantized(const TrajectorySample & sample);
TrajectoryLog quantized(std::span<const TrajectorySample> samples);

}  // namespace vpi::perception

#endif  // VPI__PERCEPTION__TRAJECTORY_HPP_
