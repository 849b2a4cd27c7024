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

#include "mergesafe/core/lanes.hpp"

#include "mergesafe/core/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace mergesafe
{

namespace
{
constexpr double kContainmentTolerance = 1e-9;
constexpr double kOverlapTolerance = 0.01;

// Signed distance of p from the directed line a->b (positive on the left).
double side_distance(const Vec2 & a, const Vec2 & b, const Vec2 & p)
{
  const Vec2 e = b - a;
  const double len = norm(e);
  if (len == 0.0) return 0.0;
  return cross(e, p - a) / len;
}

// Crossing with penetration beyond tol on both segments.
bool segments_cross(const Vec2 & a, const Vec2 & b, const Vec2 & c, const Vec2 & d, double tol)
{
  const double dc = side_distance(a, b, c);
  const double dd = side_distance(a, b, d);
  const double da = side_distance(c, d, a);
  const double db = side_distance(c, d, b);
  const bool cd_split = (dc > tol && dd < -tol) || (dc < -tol && dd > tol);
  const bool ab_split = (da > tol && db < -tol) || (da < -tol && db > tol);
  return cd_split && ab_split;
}

double distance_to_boundary(const Polyline & polygon, const Vec2 & p)
{
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    best = std::min(best, distance_to_segment(p, polygon[i], polygon[(i + 1) % n]));
  }
  return best;
}

bool polygon_is_simple(const Polyline & poly)
{
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through the closing edge
      if (segments_cross(
            poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n], kContainmentTolerance)) {
        return false;
      }
    }
  }
  return true;
}

bool polygons_overlap(const Polyline & p, const Polyline & q)
{
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (segments_cross(
            p[i], p[(i + 1) % p.size()], q[j], q[(j + 1) % q.size()], kOverlapTolerance)) {
        return true;
      }
    }
  }
  // Vertices and edge midpoints strictly inside the other polygon. Midpoints
  // catch overlaps whose vertices all sit on the other boundary.
  auto vertex_inside = [](const Polyline & outer, const Polyline & inner) {
    auto strictly_inside = [&](const Vec2 & v) {
      return point_in_polygon(outer, v, 0.0) && distance_to_boundary(outer, v) > kOverlapTolerance;
    };
    for (std::size_t i = 0; i < inner.size(); ++i) {
      const Vec2 & a = inner[i];
      const Vec2 & b = inner[(i + 1) % inner.size()];
      if (strictly_inside(a) || strictly_inside((a + b) * 0.5)) return true;
    }
    return false;
  };
  return vertex_inside(p, q) || vertex_inside(q, p);
}

}  // namespace

VehicleClass classify_vehicle(double length)
{
  if (!(length > 0.0)) {
    throw validation_error("vehicle length must be positive, got " + std::to_string(length));
  }
  return length > kTruckLengthThreshold ? VehicleClass::Truck : VehicleClass::Car;
}

double distance_to_segment(const Vec2 & p, const Vec2 & a, const Vec2 & b)
{
  const Vec2 e = b - a;
  const double len2 = dot(e, e);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, e) / len2, 0.0, 1.0);
  return distance(p, a + e * t);
}

bool point_in_polygon(const Polyline & polygon, const Vec2 & point, double tolerance)
{
  const std::size_t n = polygon.size();
  if (n < 3) return false;
  if (tolerance > 0.0 && distance_to_boundary(polygon, point) <= tolerance) {
    return true;
  }
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 & a = polygon[i];
    const Vec2 & b = polygon[j];
    if ((a.y > point.y) != (b.y > point.y)) {
      const double x_cross = a.x + (point.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (point.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

std::optional<LaneId> assign_lane(const Vec2 & point, const SiteGeometry & site)
{
  std::optional<LaneId> best;
  for (const auto & lane : site.lanes) {
    if (best && lane.lane_id >= *best) continue;
    if (point_in_polygon(lane.polygon(), point, kContainmentTolerance)) {
      best = lane.lane_id;
    }
  }
  return best;
}

PolylineProjection project_onto(const Polyline & line, const Vec2 & point)
{
  PolylineProjection best;
  best.distance = std::numeric_limits<double>::infinity();
  double walked = 0.0;
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    const Vec2 a = line[i];
    const Vec2 e = line[i + 1] - a;
    const double len = norm(e);
    if (len == 0.0) continue;
    const double t = std::clamp(dot(point - a, e) / (len * len), 0.0, 1.0);
    const double d = distance(point, a + e * t);
    if (d < best.distance) {
      best.distance = d;
      best.arc_length = walked + t * len;
      best.tangent = e * (1.0 / len);
    }
    walked += len;
  }
  return best;
}

namespace
{
const Lane * nearest_lane(const Vec2 & point, const SiteGeometry & site)
{
  const Lane * best = nullptr;
  double best_d = std::numeric_limits<double>::infinity();
  for (const auto & lane : site.lanes) {
    if (lane.centerline.size() < 2) continue;
    const double d = project_onto(lane.centerline, point).distance;
    if (d < best_d) {
      best_d = d;
      best = &lane;
    }
  }
  return best;
}

const Lane * lane_or_nearest(const Vec2 & point, std::optional<LaneId> lane, const SiteGeometry & site)
{
  if (lane) {
    if (const Lane * l = site.find_lane(*lane); l && l->centerline.size() >= 2) return l;
  }
  return nearest_lane(point, site);
}
}  // namespace

double longitudinal_position(
  const Vec2 & point, std::optional<LaneId> lane, const SiteGeometry & site)
{
  const Lane * l = lane_or_nearest(point, lane, site);
  if (l == nullptr) return point.x;
  return project_onto(l->centerline, point).arc_length;
}

double normalize_angle(double angle)
{
  constexpr double pi = std::numbers::pi;
  double a = std::remainder(angle, 2.0 * pi);
  if (a <= -pi) a += 2.0 * pi;
  return a;
}

double derive_heading(
  const Vec2 & position, const Vec2 & velocity, std::optional<LaneId> lane,
  const SiteGeometry & site)
{
  if (norm(velocity) >= kHeadingMinSpeed) {
    return normalize_angle(std::atan2(velocity.y, velocity.x));
  }
  const Lane * l = lane_or_nearest(position, lane, site);
  if (l == nullptr) return 0.0;
  const Vec2 t = project_onto(l->centerline, position).tangent;
  return normalize_angle(std::atan2(t.y, t.x));
}

int marking_window_frames(double frame_rate, double window_seconds)
{
  return static_cast<int>(std::lround(window_seconds * frame_rate));
}

std::optional<LaneId> lane_of(const KinematicState & state, const SiteGeometry & site)
{
  if (state.lane_id) return state.lane_id;
  return assign_lane(state.position(), site);
}

std::vector<LaneChangeEpisode> detect_lane_changes(
  const VehicleTrack & track, const SiteGeometry & site, int window_frames)
{
  struct Crossing
  {
    Frame frame;
    LaneId from;
    LaneId to;
  };
  std::vector<Crossing> crossings;
  std::optional<LaneId> previous;
  for (const auto & s : track.states) {
    const auto lane = lane_of(s, site);
    if (!lane) continue;
    if (previous && *previous != *lane) {
      crossings.push_back({s.frame, *previous, *lane});
    }
    previous = lane;
  }

  std::vector<LaneChangeEpisode> episodes;
  for (const auto & c : crossings) {
    const Frame start = c.frame - window_frames;
    const Frame end = c.frame + window_frames;
    if (!episodes.empty()) {
      auto & last = episodes.back();
      // A there-and-back manoeuvre stays two episodes so from != to holds.
      if (start <= last.end_frame && last.from_lane != c.to) {
        last.end_frame = end;
        last.to_lane = c.to;
        continue;
      }
    }
    episodes.push_back({track.id, start, end, c.from, c.to});
  }
  return episodes;
}

void validate_site(const SiteGeometry & site)
{
  if (!(site.frame_rate > 0.0) || !std::isfinite(site.frame_rate)) {
    throw validation_error("site frame_rate must be positive");
  }
  if (!(site.segment_length > 0.0) || !std::isfinite(site.segment_length)) {
    throw validation_error("site segment_length must be positive");
  }
  if (site.lanes.empty()) {
    throw validation_error("site has no lane geometry");
  }
  for (std::size_t i = 0; i < site.lanes.size(); ++i) {
    const Lane & lane = site.lanes[i];
    const std::string name = "lane " + std::to_string(lane.lane_id);
    if (i > 0 && site.lanes[i - 1].lane_id >= lane.lane_id) {
      throw validation_error("lane ids must be unique (" + name + ")");
    }
    if (lane.centerline.size() < 2 || lane.left_boundary.size() < 2 ||
        lane.right_boundary.size() < 2)
    {
      throw validation_error(name + ": centerline and boundaries need at least two points");
    }
    for (const auto * line : {&lane.centerline, &lane.left_boundary, &lane.right_boundary}) {
      for (const auto & p : *line) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
          throw validation_error(name + ": non-finite coordinate");
        }
      }
    }
    if (!polygon_is_simple(lane.polygon())) {
      throw validation_error(name + ": lane polygon self-intersects");
    }
  }
  for (std::size_t i = 0; i < site.lanes.size(); ++i) {
    const auto pi = site.lanes[i].polygon();
    for (std::size_t j = i + 1; j < site.lanes.size(); ++j) {
      if (polygons_overlap(pi, site.lanes[j].polygon())) {
        throw validation_error(
          "lanes " + std::to_string(site.lanes[i].lane_id) + " and " +
          std::to_string(site.lanes[j].lane_id) + " overlap");
      }
    }
  }
}

}  // namespace mergesafe
