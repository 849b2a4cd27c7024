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

#ifndef MERGESAFE__GEOMETRY__ORIENTED_BOX_HPP_
#define MERGESAFE__GEOMETRY__ORIENTED_BOX_HPP_

#include "mergesafe/geometry/vec2.hpp"

#include <array>

namespace mergesafe
{

/// Vehicle footprint: a rectangle centered on the vehicle, long axis along
/// `heading`.
struct OrientedBox
{
  Vec2 center;
  double heading{0.0};
  double length{0.0};
  double width{0.0};
};

/// Index into corners(): front-left, front-right, rear-right, rear-left
/// (clockwise seen from above with y to the left of travel).
enum class Corner : int { FrontLeft = 0, FrontRight = 1, RearRight = 2, RearLeft = 3 };

/// Box with its rotation precomputed; this is the form every TTC kernel
/// consumes so that all of them see identical inputs.
struct BoxFrame
{
  double cx;
  double cy;
  double cos_h;
  double sin_h;
  double half_length;
  double half_width;
};

BoxFrame make_frame(const OrientedBox & box);

/// Corners in Corner order: center + R(heading) * (+-length/2, +-width/2).
std::array<Vec2, 4> corners(const OrientedBox & box);
std::array<Vec2, 4> corners(const BoxFrame & box);

/// Separating-axis overlap test over the four edge normals; touching counts.
bool boxes_overlap(const OrientedBox & a, const OrientedBox & b);
bool boxes_overlap(const BoxFrame & a, const BoxFrame & b);

}  // namespace mergesafe

#endif  // MERGESAFE__GEOMETRY__ORIENTED_BOX_HPP_
