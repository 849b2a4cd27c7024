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

#include "mergesafe/core/types.hpp"

#include <algorithm>
#include <limits>

namespace mergesafe
{

std::string_view to_string(VehicleClass c) { return c == VehicleClass::Truck ? "Truck" : "Car"; }

std::string_view to_string(LaneType t)
{
  switch (t) {
    case LaneType::Mainline:
      return "mainline";
    case LaneType::OnRamp:
      return "on_ramp";
    case LaneType::Acceleration:
      return "acceleration";
  }
  return "mainline";
}

std::optional<LaneType> parse_lane_type(std::string_view s)
{
  if (s == "mainline") return LaneType::Mainline;
  if (s == "on_ramp") return LaneType::OnRamp;
  if (s == "acceleration") return LaneType::Acceleration;
  return std::nullopt;
}

double KinematicState::speed() const { return std::sqrt(vx * vx + vy * vy); }

const KinematicState * VehicleTrack::state_at(Frame frame) const
{
  auto it = std::lower_bound(
    states.begin(), states.end(), frame,
    [](const KinematicState & s, Frame f) { return s.frame < f; });
  if (it == states.end() || it->frame != frame) {
    return nullptr;
  }
  return &*it;
}

Polyline Lane::polygon() const
{
  Polyline poly = left_boundary;
  poly.insert(poly.end(), right_boundary.rbegin(), right_boundary.rend());
  return poly;
}

const Lane * SiteGeometry::find_lane(LaneId id) const
{
  for (const auto & lane : lanes) {
    if (lane.lane_id == id) return &lane;
  }
  return nullptr;
}

BoundingBox bounding_box(const SiteGeometry & site)
{
  constexpr double inf = std::numeric_limits<double>::infinity();
  BoundingBox box{{inf, inf}, {-inf, -inf}};
  auto grow = [&box](const Polyline & line) {
    for (const auto & p : line) {
      box.min.x = std::min(box.min.x, p.x);
      box.min.y = std::min(box.min.y, p.y);
      box.max.x = std::max(box.max.x, p.x);
      box.max.y = std::max(box.max.y, p.y);
    }
  };
  for (const auto & lane : site.lanes) {
    grow(lane.left_boundary);
    grow(lane.right_boundary);
    grow(lane.centerline);
  }
  return box;
}

const VehicleTrack * Dataset::find_track(VehicleId id) const
{
  auto it = std::lower_bound(
    tracks.begin(), tracks.end(), id,
    [](const VehicleTrack & t, VehicleId v) { return t.id < v; });
  if (it == tracks.end() || it->id != id) {
    return nullptr;
  }
  return &*it;
}

}  // namespace mergesafe
