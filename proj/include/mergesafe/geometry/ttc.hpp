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

#ifndef MERGESAFE__GEOMETRY__TTC_HPP_
#define MERGESAFE__GEOMETRY__TTC_HPP_

#include "mergesafe/geometry/oriented_box.hpp"
#include "mergesafe/geometry/vec2.hpp"

#include <optional>

namespace mergesafe
{

/// Relative speeds at or below this have no TTC.
inline constexpr double kRelativeSpeedFloor = 1e-6;
/// On-segment tolerance in meters.
inline constexpr double kSegmentTolerance = 1e-9;
/// |cross(dir, edge)| <= eps * |dir| * |edge| counts as parallel.
inline constexpr double kParallelEpsilon = 1e-12;

struct RayHit
{
  Vec2 point;
  /// origin + t * direction == point, t >= 0.
  double t{0.0};
};

/// Forward ray against a closed segment. None for parallel (including
/// collinear) lines, hits behind the origin and hits off the segment.
std::optional<RayHit> ray_segment_intersection(
  const Vec2 & origin, const Vec2 & direction, const Vec2 & seg_start, const Vec2 & seg_end);

struct CollisionDistance
{
  double distance{0.0};
  /// Corner of the moving box that realized the minimum.
  Corner corner{Corner::FrontLeft};
};

/// Shortest distance a corner of `moving` travels along `rel_vel` before
/// touching a side of `stationary` (16 corner/side systems). None when no
/// forward corner ray meets a side.
std::optional<CollisionDistance> directional_collision_distance(
  const OrientedBox & moving, const OrientedBox & stationary, const Vec2 & rel_vel);

struct PairState
{
  OrientedBox box_a;
  Vec2 vel_a;
  OrientedBox box_b;
  Vec2 vel_b;
};

enum class WitnessSide { None, A, B };

struct TtcResult
{
  std::optional<double> ttc;
  std::optional<double> collision_distance;
  /// Which vehicle's corner realized the collision distance; None when there
  /// is no TTC or the boxes already overlap.
  WitnessSide witness{WitnessSide::None};
  Corner witness_corner{Corner::FrontLeft};
};

/// Two-dimensional time to collision under constant velocities. Both
/// stationary-frame passes are evaluated and the shorter collision distance
/// is divided by the relative speed |vel_a - vel_b|. Overlapping boxes give 0.
TtcResult ttc(const PairState & pair);

/// Bumper-to-bumper TTC on a single line. Positions are vehicle fronts.
/// Throws std::invalid_argument when lag_pos >= lead_pos or the gap is
/// negative; returns none unless the lag vehicle is faster.
std::optional<double> ttc_1d(
  double lead_pos, double lead_len, double lead_speed, double lag_pos, double lag_speed);

namespace detail
{
/// Shared arithmetic of ttc(); the SIMD kernels reproduce it lane by lane.
TtcResult ttc_frames(const BoxFrame & a, const Vec2 & vel_a, const BoxFrame & b, const Vec2 & vel_b);
}  // namespace detail

}  // namespace mergesafe

#endif  // MERGESAFE__GEOMETRY__TTC_HPP_
