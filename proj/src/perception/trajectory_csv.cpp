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

#include "vpi/perception/trajectory_csv.hpp"

#include <fmt/format.h>

#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>

namespace vpi::perception
{

CsvSchemaError::CsvSchemaError(std::size_t row, std::string column, const std::string & what)
: std::runtime_error(
    column.empty() ? fmt::format("trajectory CSV row {}: {}", row, what)
                   : fmt::format("trajectory CSV row {}, column '{}': {}", row, column, what)),
  row_(row),
  column_(std::move(column))
{
}

void write_trajectory_csv(std::ostream & os, std::span<const TrajectorySample> samples)
{
  os << kTrajectoryCsvHeader << '\n';
  for (const auto & s : samples) {
    os << s.frame << ',' << format_fixed3(s.x_veh) << ',' << format_fixed3(s.y_veh) << ','
       << format_fixed3(s.v_veh_x) << ',' << format_fixed3(s.v_veh_y) << ','
       << format_fixed3(s.x_ped) << ',' << format_fixed3(s.y_ped) << ','
       << format_fixed3(s.v_ped_x) << ',' << format_fixed3(s.v_ped_y) << ','
       << format_fixed3(s.d) << '\n';
  }
}

void write_trajectory_csv(
  const std::filesystem::path & path, std::span<const TrajectorySample> samples)
{
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  write_trajectory_csv(os, samples);
}

namespace
{

std::vector<std::string> split_fields(const std::string & line)
{
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) {
      break;
    }
    start = comma + 1;
  }
  return out;
}

double parse_real(const std::string & text, std::size_t row, const char * column)
{
  if (text.empty()) {
    throw CsvSchemaError(row, column, "empty value");
  }
  char * end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || !std::isfinite(v)) {
    throw CsvSchemaError(row, column, "not a finite number: '" + text + "'");
  }
  return v;
}

std::int64_t parse_frame(const std::string & text, std::size_t row)
{
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || v < 0) {
    throw CsvSchemaError(row, "frame", "not a non-negative integer: '" + text + "'");
  }
  return v;
}

}  // namespace

TrajectoryLog read_trajectory_csv(std::istream & is)
{
  std::string line;
  if (!std::getline(is, line)) {
    throw CsvSchemaError(1, "", "missing header");
  }
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  if (line != kTrajectoryCsvHeader) {
    const auto got = split_fields(line);
    for (std::size_t i = 0; i < std::size(kSampleFields); ++i) {
      if (i >= got.size() || got[i] != kSampleFields[i]) {
        throw CsvSchemaError(1, kSampleFields[i], "unexpected header");
      }
    }
    throw CsvSchemaError(1, "", "unexpected extra header columns");
  }

  TrajectoryLog out;
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (is.eof()) {
      throw CsvSchemaError(row, "", "truncated row (missing line terminator)");
    }
    if (line.empty()) {
      throw CsvSchemaError(row, "", "blank line");
    }
    const auto f = split_fields(line);
    if (f.size() != std::size(kSampleFields)) {
      const auto missing = f.size() < std::size(kSampleFields) ? kSampleFields[f.size()] : "";
      throw CsvSchemaError(
        row, missing, fmt::format("expected 10 fields, found {}", f.size()));
    }
    TrajectorySample s;
    s.frame = parse_frame(f[0], row);
    s.x_veh = parse_real(f[1], row, "x_veh");
    s.y_veh = parse_real(f[2], row, "y_veh");
    s.v_veh_x = parse_real(f[3], row, "v_veh_x");
    s.v_veh_y = parse_real(f[4], row, "v_veh_y");
    s.x_ped = parse_real(f[5], row, "x_ped");
    s.y_ped = parse_real(f[6], row, "y_ped");
    s.v_ped_x = parse_real(f[7], row, "v_ped_x");
    s.v_ped_y = parse_real(f[8], row, "v_ped_y");
    s.d = parse_real(f[9], row, "d");
    if (s.d < 0.0) {
      throw CsvSchemaError(row, "d", "negative distance");
    }
    if (!out.empty() && s.frame != out.back().frame + 1) {
      throw CsvSchemaError(row, "frame", "frames must be contiguous");
    }
    out.push_back(s);
  }
  if (out.empty()) {
    throw CsvSchemaError(row, "", "no samples");
  }
  return out;
}

TrajectoryLog read_trajectory_csv(const std::filesystem::path & path)
{
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    throw std::runtime_error("cannot open " + path.string());
  }
  return read_trajectory_csv(is);
}

}  // namespace vpi::perception
