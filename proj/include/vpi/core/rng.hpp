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

#ifndef VPI__CORE__RNG_HPP_
#define VPI__CORE__RNG_HPP_

#include <cstdint>
#include <random>

namespace vpi::core
{

/// Counter-based seed derivation: the child seed depends only on (master, stream, index),
/// never on the order in which children are requested.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) noexcept;

/// Deterministic random stream. Distribution transforms are done here rather than through
/// <random> distributions, whose output differs between standard library implementations.
class Rng
{
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform01();
  double uniform(double lo, double hi);
  bool bernoulli(double p);
  /// Uniform integer in [0, n).
  std::uint64_t index(std::uint64_t n);

private:
  std::mt19937_64 engine_;
};

}  // namespace vpi::core

#endif  // VPI__CORE__RNG_HPP_
