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

#include "mergesafe/geometry/oriented_box.hpp"

#include <cmath>

namespace mergesafe
{

BoxFrame make_frame(const OrientedBox & box)
{
  return {box.center.x,      box.center.y,        std::cos(box.heading),
          std::sin(box.heading), box.length * 0.5, box.width * 0.5};
}

std::array<Vec2, 4> corners(const BoxFrame & box)
{
  const double lx[4] = {box.half_length, box.half_length, -box.half_length, -box.half_length};
  const double ly[4] = {box.half_width, -box.half_width, -box.half_width, box.half_width};
  std::array<Vec2, 4> out;
  for (int i = 0; i < 4; ++i) {
    out[i] = {
      box.cx + (box.cos_h * lx[i] - box.sin_h * ly[i]),
      box.cy + (box.sin_h * lx[i] + box.cos_h * ly[i])};
  }
  return out;
}

std::array<Vec2, 4> corners(const OrientedBox & box) { return corners(make_frame(box)); }

namespace
{
double projected_radius(const BoxFrame & box, double nx, double ny)
{
  return box.half_length * std::abs(box.cos_h * nx + box.sin_h * ny) +
         box.half_width * std::abs(-box.sin_h * nx + box.cos_h * ny);
}
}  // namespace

bool boxes_overlap(const BoxFrame & a, const BoxFrame & b)
{
  const double axes[4][2] = {
    {a.cos_h, a.sin_h}, {-a.sin_h, a.cos_h}, {b.cos_h, b.sin_h}, {-b.sin_h, b.cos_h}};
  const double dx = a.cx - b.cx;
  const double dy = a.cy - b.cy;
  for (const auto & n : axes) {
    const double gap = std::abs(dx * n[0] + dy * n[1]);
    if (gap > projected_radius(a, n[0], n[1]) + projected_radius(b, n[0], n[1])) {
      return false;
    }
  }
  return true;
}

bool boxes_overlap(const OrientedBox & a, const OrientedBox & b)
{
  return boxes_overlap(make_frame(a), make_frame(b));
}

}  // namespace mergesafe
