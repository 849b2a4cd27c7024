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

#include "fixtures.hpp"

#include "mergesafe/core/error.hpp"
#include "mergesafe/core/ingest.hpp"
#include "mergesafe/core/lanes.hpp"
#include "mergesafe/report/report.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

namespace mergesafe
{
namespace
{

using testing::make_track;
using testing::straight_states;

// Mainline lane k of the template has its centre at y = (5 - k + 0.5) * 3.5.
constexpr double kLane2Y = 12.25;
constexpr double kLane3Y = 8.75;
constexpr double kLane4Y = 5.25;
constexpr double kLane5Y = 1.75;

std::string expect_validation_error(const std::function<void()> & f)
{
  try {
    f();
  } catch (const Error & e) {
    EXPECT_EQ(e.kind(), ErrorKind::Validation);
    return e.what();
  }
  ADD_FAILURE() << "expected a validation error";
  return {};
}

TEST(ClassifyVehicle, LengthThreshold)
{
  EXPECT_EQ(classify_vehicle(12.0), VehicleClass::Truck);
  EXPECT_EQ(classify_vehicle(4.5), VehicleClass::Car);
  EXPECT_EQ(classify_vehicle(6.0), VehicleClass::Car);
  EXPECT_EQ(classify_vehicle(std::nextafter(6.0, 7.0)), VehicleClass::Truck);
}

TEST(ClassifyVehicle, RejectsNonPositiveLength)
{
  expect_validation_error([] { classify_vehicle(0.0); });
  expect_validation_error([] { classify_vehicle(-3.0); });
}

TEST(ClassifyVehicle, MonotoneStepFunction)
{
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> len(0.1, 20.0);
  for (int i = 0; i < 2000; ++i) {
    double a = len(rng);
    double b = len(rng);
    if (a > b) std::swap(a, b);
    if (classify_vehicle(a) == VehicleClass::Truck) {
      EXPECT_EQ(classify_vehicle(b), VehicleClass::Truck);
    }
  }
}

TEST(AssignLane, CenterlineBoundaryAndOutside)
{
  const SiteGeometry site = site_template();
  EXPECT_EQ(assign_lane(Vec2{100.0, kLane3Y}, site), 3);
  // y = 7.0 is shared by lanes 3 and 4; the lower id wins.
  EXPECT_EQ(assign_lane(Vec2{100.0, 7.0}, site), 3);
  EXPECT_EQ(assign_lane(Vec2{100.0, 17.5 + 10.0}, site), std::nullopt);
  EXPECT_EQ(assign_lane(Vec2{100.0, -1.75}, site), kAccelerationLane);
  EXPECT_EQ(assign_lane(Vec2{100.0, -5.25}, site), kOnRampLane);
  // The on-ramp ends at x = 120.
  EXPECT_EQ(assign_lane(Vec2{150.0, -5.25}, site), std::nullopt);
}

TEST(AssignLane, StableUnderSubMillimetrePerturbation)
{
  const SiteGeometry site = site_template();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> x(1.0, 214.0);
  std::uniform_real_distribution<double> y(-3.4, 17.4);
  std::uniform_real_distribution<double> eps(-0.0009, 0.0009);
  for (int i = 0; i < 2000; ++i) {
    const Vec2 p{x(rng), y(rng)};
    // Keep strictly interior points: at least 1 mm from any lane boundary.
    const double frac = std::fmod(p.y + 7.0, kLaneWidth);
    if (frac < 0.001 || frac > kLaneWidth - 0.001) continue;
    EXPECT_EQ(assign_lane(p, site), assign_lane(Vec2{p.x + eps(rng), p.y + eps(rng)}, site));
  }
}

// A track that sits in `lanes[i]` for frames [starts[i], starts[i+1]).
VehicleTrack lane_sequence_track(const std::vector<std::pair<Frame, double>> & segments, Frame last)
{
  std::vector<KinematicState> states;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const Frame end = i + 1 < segments.size() ? segments[i + 1].first : last + 1;
    for (Frame f = segments[i].first; f < end; ++f) {
      states.push_back({f, 0.5 * static_cast<double>(f), segments[i].second, 12.5, 0.0, 0.0, std::nullopt});
    }
  }
  return make_track(1, 4.5, 1.8, std::move(states));
}

TEST(DetectLaneChanges, ConstantLaneIsEmpty)
{
  const auto track = lane_sequence_track({{0, kLane2Y}}, 300);
  EXPECT_TRUE(detect_lane_changes(track, site_template(), 25).empty());
}

TEST(DetectLaneChanges, SingleCrossingWindow)
{
  const auto track = lane_sequence_track({{0, kLane4Y}, {100, kLane3Y}}, 300);
  const auto eps = detect_lane_changes(track, site_template(), 25);
  ASSERT_EQ(eps.size(), 1u);
  EXPECT_EQ(eps[0], (LaneChangeEpisode{1, 75, 125, 4, 3}));
}

TEST(DetectLaneChanges, OverlappingWindowsMerge)
{
  const auto track = lane_sequence_track({{0, kLane5Y}, {100, kLane4Y}, {130, kLane3Y}}, 300);
  const auto eps = detect_lane_changes(track, site_template(), 25);
  ASSERT_EQ(eps.size(), 1u);
  EXPECT_EQ(eps[0], (LaneChangeEpisode{1, 75, 155, 5, 3}));
}

TEST(DetectLaneChanges, SeparatedCrossingsGiveOneEpisodeEach)
{
  const auto track =
    lane_sequence_track({{0, kLane5Y}, {100, kLane4Y}, {200, kLane3Y}, {300, kLane2Y}}, 400);
  const auto eps = detect_lane_changes(track, site_template(), 25);
  ASSERT_EQ(eps.size(), 3u);
  EXPECT_EQ(eps[2], (LaneChangeEpisode{1, 275, 325, 3, 2}));
}

TEST(DetectLaneChanges, ReturnToOriginLaneStaysSeparate)
{
  // 4 -> 3 -> 4 with overlapping windows would merge into a 4 -> 4 episode.
  const auto track = lane_sequence_track({{0, kLane4Y}, {100, kLane3Y}, {110, kLane4Y}}, 300);
  const auto eps = detect_lane_changes(track, site_template(), 25);
  ASSERT_EQ(eps.size(), 2u);
  for (const auto & e : eps) EXPECT_NE(e.from_lane, e.to_lane);
}

TEST(DeriveHeading, VelocityDirectionOrLaneTangent)
{
  const SiteGeometry site = site_template();
  EXPECT_DOUBLE_EQ(derive_heading({10, kLane3Y}, {0, 5}, 3, site), std::numbers::pi / 2);
  EXPECT_DOUBLE_EQ(derive_heading({10, kLane3Y}, {0.01, 0.05}, 3, site), 0.0);
  EXPECT_DOUBLE_EQ(normalize_angle(-std::numbers::pi), std::numbers::pi);
  EXPECT_DOUBLE_EQ(derive_heading({10, kLane3Y}, {-5, 0}, 3, site), std::numbers::pi);
}

const char * kThreeTracks =
  "frame,id,x,y,vx,vy,length,width\n"
  "2,7,20.5,8.75,20,0,4.5,1.8\n"
  "0,3,10,1.75,18,0,12,2.5\n"
  "1,3,10.72,1.75,18,0.1,12,2.5\n"
  "0,7,19.7,8.75,20,0,4.5,1.8\n"
  "1,7,20.1,8.75,20,0,4.5,1.8\n"
  "5,9,50,12.25,25,-0.5,4.2,1.7\n";

Dataset parse(const std::string & text)
{
  std::istringstream in(text);
  return parse_tracks_csv(in, site_template());
}

TEST(Ingest, ThreeTrackFixtureSortedAndClassified)
{
  const Dataset d = parse(kThreeTracks);
  ASSERT_EQ(d.tracks.size(), 3u);
  EXPECT_EQ(d.tracks[0].id, 3);
  EXPECT_EQ(d.tracks[0].vclass, VehicleClass::Truck);
  const auto & t7 = *d.find_track(7);
  ASSERT_EQ(t7.states.size(), 3u);
  EXPECT_EQ(t7.states[0].frame, 0);
  EXPECT_EQ(t7.states[2].frame, 2);
  EXPECT_EQ(t7.vclass, VehicleClass::Car);
  EXPECT_EQ(t7.states[0].lane_id, 3);
  EXPECT_FALSE(d.lanes_from_file);
}

TEST(Ingest, NanVelocityCitesRow)
{
  const auto msg = expect_validation_error([] {
    parse("frame,id,x,y,vx,vy,length,width\n0,1,10,1.75,nan,0,4.5,1.8\n");
  });
  EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
  EXPECT_NE(msg.find("vx"), std::string::npos) << msg;
}

TEST(Ingest, MalformedCellNamesLineAndColumn)
{
  const auto msg = expect_validation_error([] {
    parse("frame,id,x,y,vx,vy,length,width\n0,1,10,1.75,20,0,4.5,1.8\n1,1,10,abc,20,0,4.5,1.8\n");
  });
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
  EXPECT_NE(msg.find("'y'"), std::string::npos) << msg;
}

TEST(Ingest, DuplicateIdFrameRejected)
{
  expect_validation_error([] {
    parse("frame,id,x,y,vx,vy,length,width\n0,1,10,1.75,20,0,4.5,1.8\n0,1,11,1.75,20,0,4.5,1.8\n");
  });
}

TEST(Ingest, MissingLaneGeometryRejected)
{
  const auto msg = expect_validation_error(
    [] { parse_site_json(R"({"frame_rate": 25, "segment_length": 215, "lanes": []})"); });
  EXPECT_NE(msg.find("lane"), std::string::npos);
  expect_validation_error([] { parse_site_json(R"({"frame_rate": 25, "segment_length": 215})"); });
}

TEST(Ingest, MissingFileIsIoError)
{
  try {
    ingest_dataset("/nonexistent/tracks.csv", "/nonexistent/site.json");
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.kind(), ErrorKind::Io);
  }
}

TEST(Ingest, FileLaneColumnWins)
{
  const Dataset d = parse(
    "frame,id,x,y,vx,vy,length,width,lane_id\n"
    "0,1,10,1.75,20,0,4.5,1.8,4\n"
    "1,1,10.8,1.75,20,0,4.5,1.8,\n");
  EXPECT_TRUE(d.lanes_from_file);
  EXPECT_EQ(d.tracks[0].states[0].lane_id, 4);
  EXPECT_EQ(d.tracks[0].states[1].lane_id, std::nullopt);
  // The geometry disagrees with the file's lane 4.
  EXPECT_FALSE(d.warnings.empty());
}

TEST(Ingest, StatesOutsideInflatedSiteRejected)
{
  expect_validation_error(
    [] { parse("frame,id,x,y,vx,vy,length,width\n0,1,500,1.75,20,0,4.5,1.8\n"); });
}

TEST(Ingest, CsvRoundTripIsBitExact)
{
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::string text = "frame,id,x,y,vx,vy,length,width\n";
  for (int id = 1; id <= 20; ++id) {
    const double length = 3.0 + 12.0 * u(rng);
    for (int f = 0; f < 30; ++f) {
      text += std::to_string(f) + "," + std::to_string(id) + "," + format_double(200.0 * u(rng)) + "," +
              format_double(-6.0 + 22.0 * u(rng)) + "," + format_double(30.0 * u(rng)) + "," +
              format_double(u(rng) - 0.5) + "," + format_double(length) + "," + format_double(1.8) + "\n";
    }
  }
  const Dataset a = parse(text);
  const std::string once = tracks_to_csv(a);
  const Dataset b = parse(once);
  EXPECT_EQ(tracks_to_csv(b), once);
  ASSERT_EQ(a.tracks.size(), b.tracks.size());
  for (std::size_t i = 0; i < a.tracks.size(); ++i) {
    ASSERT_EQ(a.tracks[i].states.size(), b.tracks[i].states.size());
    EXPECT_EQ(a.tracks[i].length, b.tracks[i].length);
    for (std::size_t k = 0; k < a.tracks[i].states.size(); ++k) {
      const auto & sa = a.tracks[i].states[k];
      const auto & sb = b.tracks[i].states[k];
      EXPECT_EQ(sa.x, sb.x);
      EXPECT_EQ(sa.y, sb.y);
      EXPECT_EQ(sa.vx, sb.vx);
      EXPECT_EQ(sa.vy, sb.vy);
      EXPECT_EQ(sa.heading, sb.heading);
    }
  }
}

TEST(Ingest, FleetMixOfReferenceCounts)
{
  // One row per vehicle: 2,512 cars and 1,346 trucks.
  std::string text = "frame,id,x,y,vx,vy,length,width\n";
  for (int id = 1; id <= 2512 + 1346; ++id) {
    const bool truck = id > 2512;
    text += "0," + std::to_string(id) + ",100,8.75,20,0," + (truck ? "12,2.5" : "4.5,1.8") + "\n";
  }
  const FleetMix mix = fleet_mix(parse(text));
  EXPECT_EQ(mix.cars, 2512u);
  EXPECT_EQ(mix.trucks, 1346u);
  EXPECT_DOUBLE_EQ(mix.truck_percentage, 34.9);
}

TEST(Site, JsonRoundTripAndValidation)
{
  const SiteGeometry site = site_template();
  const SiteGeometry back = parse_site_json(site_to_json(site));
  EXPECT_EQ(site_to_json(back), site_to_json(site));
  ASSERT_EQ(back.lanes.size(), 7u);
  EXPECT_EQ(back.lanes[6].lane_type, LaneType::OnRamp);

  SiteGeometry overlapping = site;
  // Shift lane 2 down by half a lane so it overlaps lane 3.
  for (auto * line : {&overlapping.lanes[1].centerline, &overlapping.lanes[1].left_boundary,
                      &overlapping.lanes[1].right_boundary}) {
    for (auto & p : *line) p.y -= 1.75;
  }
  expect_validation_error([&] { validate_site(overlapping); });

  SiteGeometry no_rate = site;
  no_rate.frame_rate = 0.0;
  expect_validation_error([&] { validate_site(no_rate); });
}

TEST(Site, SharedBoundariesWithinToleranceAccepted)
{
  SiteGeometry site = site_template();
  // Lane 3 overlaps lane 4 by 5 mm, inside the 1 cm tolerance.
  for (auto & p : site.lanes[2].right_boundary) p.y -= 0.005;
  EXPECT_NO_THROW(validate_site(site));
}

TEST(Dataset, LongitudinalPositionFollowsCenterline)
{
  const SiteGeometry site = site_template();
  EXPECT_DOUBLE_EQ(longitudinal_position({42.0, kLane2Y}, 2, site), 42.0);
  EXPECT_DOUBLE_EQ(longitudinal_position({42.0, kLane2Y + 0.3}, 2, site), 42.0);
}

TEST(Dataset, MakeDatasetComputesLanesAndHeadings)
{
  auto track = make_track(5, 4.5, 1.8, straight_states(0, 10, 10.0, kLane4Y, 20.0, 1.0));
  const Dataset d = testing::make_fixture({track});
  EXPECT_EQ(d.tracks[0].states[0].lane_id, 4);
  EXPECT_EQ(lane_of(d.tracks[0].states[0], d.site), 4);
  EXPECT_DOUBLE_EQ(d.tracks[0].states[3].heading, std::atan2(1.0, 20.0));
}

}  // namespace
}  // namespace mergesafe
