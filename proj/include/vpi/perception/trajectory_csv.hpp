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

#ifndef VPI__PERCEPTION__TRAJECTORY_CSV_HPP_
#define VPI__PERCEPTION__TRAJECTORY_CSV_HPP_

#include "vpi/perception/trajectory.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>

namespace vpi::perception
{

/// Schema violation in a persisted trajectory log. `row` is the 1-based line number (the header
/// is line 1); `column` is empty when the whole row is at fault.
class CsvSchemaError : public std::runtime_error
{
public:
  CsvSchemaError(std::size_t row, std::string column, const std::string & what);

  std::size_t row() const noexcept { return row_; }
  const std::string & column() const noexcept { return column_; }

private:
  std::size_t row_;
  std::string column_;
};

inline constexpr const char * kTrajectoryCsvHeader =
  "frame,x_veh,y_veh,v_veh_x,v_veh_y,x_ped,y_ped,v_ped_x,v_ped_y,d";

void write_trajectory_csv(std::ostream & os, std::span<const TrajectorySample> samples);
void write_trajectory_csv(const std::filesystem::path & path, std::span<const TrajectorySample> samples);

/// Parses and structurally validates a log: exact header, ten numeric fields per row,
/// contiguous frames, non-negative d. Throws CsvSchemaError.
TrajectoryLog read_trajectory_csv(std::istream & is);
TrajectoryLog read_trajectory_csv(const std::filesystem::path & path);

}  // namespace vpi::perception

#endif  // VPI__PERCEPTION__TRAJECTORY_CSV_HPP_
