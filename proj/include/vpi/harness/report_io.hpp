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

#ifndef VPI__HARNESS__REPORT_IO_HPP_
#define VPI__HARNESS__REPORT_IO_HPP_

#include "vpi/metrics/aggregate.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace vpi::harness
{

/// Stratified safety table: conflicts, false negatives and min-TTC per demographic and mode.
std::string safety_table_csv(const metrics::AggregateReport & report);
/// False alarms and speed maintenance on yielding cases per mode.
std::string false_alarm_table_csv(const metrics::AggregateReport & report);
/// Traversal time by intent class per mode.
std::string traversal_table_csv(const metrics::AggregateReport & report);
/// Every stratum with every column.
std::string report_csv(const metrics::AggregateReport & report);
/// One row per episode, for external plotting.
std::string episodes_csv(std::span<const metrics::EpisodeResult> results);

nlohmann::json report_document(
  const std::string & suite_name, std::span<const metrics::EpisodeResult> results,
  const metrics::AggregateReport & report);

/// Writes report.json, report.csv, safety.csv, false_alarms.csv, traversal.csv and episodes.csv into
/// `dir`. Results are sorted by (mode, scenario id) first.
metrics::AggregateReport write_reports(
  const std::filesystem::path & dir, const std::string & suite_name,
  std::vector<metrics::EpisodeResult> results);

/// Loads every result.json found below `dir`.
std::vector<metrics::EpisodeResult> load_results(const std::filesystem::path & dir);

/// Multiplier sweep summary: one row per override.
std::string sweep_table_csv(const metrics::AggregateReport & report);

}  // namespace vpi::harness

#endif  // VPI__HARNESS__REPORT_IO_HPP_
