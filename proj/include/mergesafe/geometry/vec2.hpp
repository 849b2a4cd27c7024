// Copyright 2026 The mergesafe Authors
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

#ifndef MERGESAFE__GEOMETRY__VEC2_HPP_
#define MERGESAFE__GEOMETRY__VEC2_HPP_

#include <cmath>

namespace mergesafe
{

/// Planar point or vector in road coordinates (meters, or m/s for velocities).
struct Vec2
{
  double x{0.0};
  double y{0.0};

  constexpr Vec2 operator+(const Vec2 & o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(const Vec2 & o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double k) const { return {x * k, y * k}; }
  constexpr bool operator==(const Vec2 &) const = default;
};

constexpr double dot(const Vec2 & a, const Vec2 & b) { return a.x * b.x + a.y * b.y; }

/// z-component of the 3D cross product.
constexpr double cross(const Vec2 & a, const Vec2 & b) { return a.x * b.y - a.y * b.x; }

inline double norm(const Vec2 & v) { return std::sqrt(v.x * v.x + v.y * v.y); }

inline double distance(const Vec2 & a, const Vec2 & b) { return norm(a - b); }

}  // namespace mergesafe

#endif  // MERGESAFE__GEOMETRY__VEC2_HPP_
