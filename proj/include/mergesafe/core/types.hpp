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

#ifndef MERGESAFE__CORE__TYPES_HPP_
#define MERGESAFE__CORE__TYPES_HPP_

#include "mergesafe/geometry/vec2.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mergesafe
{

using VehicleId = std::int64_t;
using Frame = std::int64_t;
using LaneId = int;
using Polyline = std::vector<Vec2>;

enum class VehicleClass { Car, Truck };

std::string_view to_string(VehicleClass c);

/// Kinematic state of one vehicle at one frame. Coordinates are metric road
/// coordinates with x increasing in the travel direction.
struct KinematicState
{
  Frame frame{0};
  double x{0.0};
  double y{0.0};
  double vx{0.0};
  double vy{0.0};
  /// Derived; in (-pi, pi].
  double heading{0.0};
  /// Lane at this frame: taken from the tracks file when it carries a lane
  /// column, otherwise computed from the site geometry.
  std::optional<LaneId> lane_id;

  Vec2 position() const { return {x, y}; }
  Vec2 velocity() const { return {vx, vy}; }
  double speed() const;
};

struct VehicleTrack
{
  VehicleId id{0};
  VehicleClass vclass{VehicleClass::Car};
  double length{0.0};
  double width{0.0};
  /// Strictly increasing in frame.
  std::vector<KinematicState> states;

  /// Binary search by frame; nullptr when the vehicle is absent at that frame.
  const KinematicState * state_at(Frame frame) const;
  Frame first_frame() const { return states.front().frame; }
  Frame last_frame() const { return states.back().frame; }
};

enum class LaneType { Mainline, OnRamp, Acceleration };

std::string_view to_string(LaneType t);
std::optional<LaneType> parse_lane_type(std::string_view s);

struct Lane
{
  LaneId lane_id{0};
  LaneType lane_type{LaneType::Mainline};
  Polyline centerline;
  Polyline left_boundary;
  Polyline right_boundary;

  /// Closed polygon: left boundary followed by the reversed right boundary.
  Polyline polygon() const;
};

struct SiteGeometry
{
  /// Sorted by lane_id.
  std::vector<Lane> lanes;
  double segment_length{215.0};
  double frame_rate{25.0};

  const Lane * find_lane(LaneId id) const;
};

struct BoundingBox
{
  Vec2 min;
  Vec2 max;
};

BoundingBox bounding_box(const SiteGeometry & site);

struct Dataset
{
  SiteGeometry site;
  /// Sorted by id, ids unique.
  std::vector<VehicleTrack> tracks;
  /// True when per-frame lanes came from the tracks file.
  bool lanes_from_file{false};
  /// Non-fatal findings from ingestion (file lane disagreeing with geometry).
  std::vector<std::string> warnings;

  const VehicleTrack * find_track(VehicleId id) const;
};

struct LaneChangeEpisode
{
  VehicleId vehicle_id{0};
  Frame start_frame{0};
  Frame end_frame{0};
  LaneId from_lane{0};
  LaneId to_lane{0};

  bool operator==(const LaneChangeEpisode &) const = default;
};

}  // namespace mergesafe

#endif  // MERGESAFE__CORE__TYPES_HPP_
