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

#ifndef MERGESAFE__CORE__LANES_HPP_
#define MERGESAFE__CORE__LANES_HPP_

#include "mergesafe/core/types.hpp"

#include <optional>
#include <vector>

namespace mergesafe
{

/// Truck iff length > 6.0 m. Throws a validation error for non-positive length.
VehicleClass classify_vehicle(double length);

inline constexpr double kTruckLengthThreshold = 6.0;

/// Lane whose polygon contains `point` (boundary inclusive). When several lanes
/// contain it, the lowest lane_id wins.
std::optional<LaneId> assign_lane(const Vec2 & point, const SiteGeometry & site);

inline std::optional<LaneId> assign_lane(const KinematicState & state, const SiteGeometry & site)
{
  return assign_lane(state.position(), site);
}

/// Projection of a point onto a polyline.
struct PolylineProjection
{
  double arc_length{0.0};
  double distance{0.0};
  /// Unit tangent of the segment holding the foot point.
  Vec2 tangent{1.0, 0.0};
};

/// Nearest-point projection; `line` needs at least two points.
PolylineProjection project_onto(const Polyline & line, const Vec2 & point);

/// Longitudinal position used for lead/lag ordering: arc length along the
/// centerline of `lane`, falling back to the nearest centerline, then to x.
double longitudinal_position(
  const Vec2 & point, std::optional<LaneId> lane, const SiteGeometry & site);

inline constexpr double kHeadingMinSpeed = 0.1;

/// atan2(vy, vx) when the speed is at least 0.1 m/s, otherwise the tangent
/// direction of the lane centerline nearest to the vehicle.
double derive_heading(
  const Vec2 & position, const Vec2 & velocity, std::optional<LaneId> lane,
  const SiteGeometry & site);

/// Maps an angle into (-pi, pi].
double normalize_angle(double angle);

/// Lane-change marking window: frames on each side of the crossing frame.
int marking_window_frames(double frame_rate, double window_seconds = 1.0);

/// Lane changes from the per-frame lane sequence. Frames with no lane are
/// skipped; every change between consecutive assigned lanes is a crossing at
/// the first frame in the new lane. Crossings whose windows overlap merge.
std::vector<LaneChangeEpisode> detect_lane_changes(
  const VehicleTrack & track, const SiteGeometry & site, int window_frames);

/// Lane of a state: the stored lane if present, otherwise from geometry.
std::optional<LaneId> lane_of(const KinematicState & state, const SiteGeometry & site);

/// Throws a validation error when the site violates its invariants (positive
/// frame rate, at least one lane, simple and pairwise disjoint lane polygons).
void validate_site(const SiteGeometry & site);

bool point_in_polygon(const Polyline & polygon, const Vec2 & point, double tolerance);

double distance_to_segment(const Vec2 & p, const Vec2 & a, const Vec2 & b);

}  // namespace mergesafe

#endif  // MERGESAFE__CORE__LANES_HPP_
