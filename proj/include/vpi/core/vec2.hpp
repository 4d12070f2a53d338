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

#ifndef VPI__CORE__VEC2_HPP_
#define VPI__CORE__VEC2_HPP_

#include <stdexcept>

namespace vpi::core
{

/// Raised when a documented precondition or invariant is broken by the caller.
class ContractViolation : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

/// Planar vector in the world frame (m or m/s). Components are always finite.
class Vec2
{
public:
  constexpr Vec2() = default;
  Vec2(double x, double y);

  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }

  double norm() const noexcept;
  double dot(const Vec2 & other) const noexcept { return x_ * other.x_ + y_ * other.y_; }

  Vec2 operator+(const Vec2 & rhs) const { return {x_ + rhs.x_, y_ + rhs.y_}; }
  Vec2 operator-(const Vec2 & rhs) const { return {x_ - rhs.x_, y_ - rhs.y_}; }
  Vec2 operator*(double s) const { return {x_ * s, y_ * s}; }

  bool operator==(const Vec2 &) const = default;

private:
  double x_{0.0};
  double y_{0.0};
};

inline Vec2 operator*(double s, const Vec2 & v) { return v * s; }

double distance(const Vec2 & a, const Vec2 & b) noexcept;

}  // namespace vpi::core

#endif  // VPI__CORE__VEC2_HPP_
