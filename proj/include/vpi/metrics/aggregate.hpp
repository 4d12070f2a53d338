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

#ifndef VPI__METRICS__AGGREGATE_HPP_
#define VPI__METRICS__AGGREGATE_HPP_

#include "vpi/metrics/episode_metrics.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace vpi::metrics
{

/// (controller mode, backend, demographic). Demographic "All" pools every demographic.
struct StratumKey
{
  std::string mode;
  std::string backend;
  std::string demographic;

  auto operator<=>(const StratumKey &) const = default;
  std::string label() const;
};

struct SummaryStat
{
  std::size_t n{0};
  std::optional<double> mean;
  std::optional<double> sd;  // sample standard deviation, needs n >= 2

  bool operator==(const SummaryStat &) const = default;
};

/// Summary over values sorted ascending first, so the result is independent of input order.
SummaryStat summarize(std::vector<double> values);

struct StratumReport
{
  std::size_t episodes{0};
  std::size_t conflicts{0};
  std::size_t collisions{0};
  std::size_t nonyielding_truth{0};
  std::size_t false_negatives{0};
  std::size_t yielding_truth{0};
  std::size_t false_positives{0};
  std::size_t classified{0};
  std::size_t correct_intent{0};
  std::size_t correct_demographic{0};
  std::size_t braking_events{0};
  std::size_t fallbacks{0};
  std::size_t yielding_speed_maintained{0};
  std::size_t not_completed{0};

  /// Rates are absent when their denominator is zero.
  std::optional<double> conflict_rate;
  std::optional<double> false_negative_rate;
  std::optional<double> false_alarm_rate;
  std::optional<double> accuracy;
  std::optional<double> demographic_accuracy;
  std::optional<double> speed_maintenance_rate;
  std::optional<double> mean_braking_events;

  /// Finite minimum TTC values only; infinite episodes are counted in `ttc_unbounded`.
  SummaryStat min_ttc;
  std::size_t ttc_unbounded{0};
  SummaryStat traversal_yielding;
  SummaryStat traversal_nonyielding;
  SummaryStat traversal_all;

  bool operator==(const StratumReport &) const = default;
};

struct AggregateReport
{
  std::map<StratumKey, StratumReport> strata;

  const StratumReport * find(const std::string & mode, const std::string & backend,
                             const std::string & demographic) const;
  bool operator==(const AggregateReport &) const = default;
};

/// Order-independent accumulation; merge is associative and commutative.
class ReportAccumulator
{
public:
  void add(const EpisodeResult & result);
  void merge(const ReportAccumulator & other);
  AggregateReport finalize() const;

private:
  struct Raw
  {
    std::vector<EpisodeResult> results;
  };
  std::map<StratumKey, Raw> raw_;
};

AggregateReport aggregate(std::span<const EpisodeResult> results);

nlohmann::json to_json(const AggregateReport & report);

}  // namespace vpi::metrics

#endif  // VPI__METRICS__AGGREGATE_HPP_
