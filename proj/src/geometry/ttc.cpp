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

#include "mergesafe/geometry/ttc.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mergesafe
{

std::optional<RayHit> ray_segment_intersection(
  const Vec2 & origin, const Vec2 & direction, const Vec2 & seg_start, const Vec2 & seg_end)
{
  const double ex = seg_end.x - seg_start.x;
  const double ey = seg_end.y - seg_start.y;
  const double denom = direction.x * ey - direction.y * ex;
  const double edge_len = std::sqrt(ex * ex + ey * ey);
  const double dir_len = std::sqrt(direction.x * direction.x + direction.y * direction.y);
  if (!(std::abs(denom) > kParallelEpsilon * dir_len * edge_len)) {
    return std::nullopt;
  }
  const double wx = seg_start.x - origin.x;
  const double wy = seg_start.y - origin.y;
  const double t = (wx * ey - wy * ex) / denom;
  const double u = (wx * direction.y - wy * direction.x) / denom;
  const double tol = kSegmentTolerance / edge_len;
  if (!(t >= 0.0 && u >= -tol && u <= 1.0 + tol)) {
    return std::nullopt;
  }
  return RayHit{{origin.x + t * direction.x, origin.y + t * direction.y}, t};
}

namespace
{

std::optional<CollisionDistance> collision_distance(
  const BoxFrame & moving, const BoxFrame & stationary, const Vec2 & rel_vel)
{
  const auto from = corners(moving);
  const auto to = corners(stationary);
  double best = std::numeric_limits<double>::infinity();
  int best_corner = -1;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const auto hit = ray_segment_intersection(from[i], rel_vel, to[j], to[(j + 1) % 4]);
      if (!hit) continue;
      const double dx = from[i].x - hit->point.x;
      const double dy = from[i].y - hit->point.y;
      const double d = std::sqrt(dx * dx + dy * dy);
      if (d < best) {
        best = d;
        best_corner = i;
      }
    }
  }
  if (best_corner < 0) return std::nullopt;
  return CollisionDistance{best, static_cast<Corner>(best_corner)};
}

}  // namespace

std::optional<CollisionDistance> directional_collision_distance(
  const OrientedBox & moving, const OrientedBox & stationary, const Vec2 & rel_vel)
{
  return collision_distance(make_frame(moving), make_frame(stationary), rel_vel);
}

namespace detail
{

TtcResult ttc_frames(const BoxFrame & a, const Vec2 & vel_a, const BoxFrame & b, const Vec2 & vel_b)
{
  TtcResult out;
  if (boxes_overlap(a, b)) {
    out.ttc = 0.0;
    out.collision_distance = 0.0;
    return out;
  }
  const Vec2 rel{vel_a.x - vel_b.x, vel_a.y - vel_b.y};
  const double speed = std::sqrt(rel.x * rel.x + rel.y * rel.y);
  if (!(speed > kRelativeSpeedFloor)) {
    return out;
  }
  const auto d_ab = collision_distance(a, b, rel);
  const auto d_ba = collision_distance(b, a, -rel);
  if (!d_ab && !d_ba) return out;

  const bool use_a = d_ab && (!d_ba || d_ab->distance <= d_ba->distance);
  const CollisionDistance & d = use_a ? *d_ab : *d_ba;
  out.collision_distance = d.distance;
  out.ttc = d.distance / speed;
  out.witness = use_a ? WitnessSide::A : WitnessSide::B;
  out.witness_corner = d.corner;
  return out;
}

}  // namespace detail

TtcResult ttc(const PairState & pair)
{
  return detail::ttc_frames(make_frame(pair.box_a), pair.vel_a, make_frame(pair.box_b), pair.vel_b);
}

std::optional<double> ttc_1d(
  double lead_pos, double lead_len, double lead_speed, double lag_pos, double lag_speed)
{
  if (!(lag_pos < lead_pos)) {
    throw std::invalid_argument("ttc_1d: lag vehicle must be behind the lead vehicle");
  }
  const double gap = lead_pos - lag_pos - lead_len;
  if (gap < 0.0) {
    throw std::invalid_argument("ttc_1d: negative bumper-to-bumper gap");
  }
  if (!(lag_speed > lead_speed)) return std::nullopt;
  return gap / (lag_speed - lead_speed);
}

}  // namespace mergesafe
