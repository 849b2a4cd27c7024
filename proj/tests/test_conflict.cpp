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

#include "mergesafe/conflict/conflict.hpp"
#include "mergesafe/core/error.hpp"
#include "mergesafe/core/lanes.hpp"
#include "mergesafe/kernels/dispatch.hpp"
#include "mergesafe/synth/scenario.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace mergesafe
{
namespace
{

using testing::make_fixture;
using testing::make_track;
using testing::straight_states;

constexpr double kLane3Y = 8.75;
constexpr double kLane4Y = 5.25;

std::vector<TtcSample> series_of(const std::vector<double> & values, Frame first = 0)
{
  std::vector<TtcSample> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    TtcSample s;
    s.frame = first + static_cast<Frame>(i);
    s.pair = {1, 2};
    s.ttc = values[i];
    out.push_back(s);
  }
  return out;
}

// Two dips of three frames each, `gap` frames apart end to start.
std::vector<double> two_dips(int gap)
{
  std::vector<double> v{3.5, 2.8, 2.5, 2.9};
  for (int i = 1; i < gap; ++i) v.push_back(4.0);
  for (double x : {2.9, 2.2, 2.6, 3.4}) v.push_back(x);
  return v;
}

TEST(ExtractEvents, SingleDip)
{
  const auto events = extract_events(series_of({3.5, 2.8, 2.5, 2.9, 3.2}), ConflictConfig{}, 25.0);
  ASSERT_EQ(events.size(), 1u);
  EXPECT_EQ(events[0].start_frame, 1);
  EXPECT_EQ(events[0].end_frame, 3);
  EXPECT_EQ(events[0].min_ttc, 2.5);
  EXPECT_EQ(events[0].min_ttc_frame, 2);
  EXPECT_FALSE(events[0].classified);
}

TEST(ExtractEvents, DipsTwoSecondsApartStaySeparate)
{
  const auto events = extract_events(series_of(two_dips(50)), ConflictConfig{}, 25.0);
  ASSERT_EQ(events.size(), 2u);
  EXPECT_EQ(events[1].min_ttc, 2.2);
}

TEST(ExtractEvents, DipsPointThreeSecondsApartMerge)
{
  // First run ends at frame 3, the second starts at frame 10: 0.28 s.
  const auto events = extract_events(series_of(two_dips(7)), ConflictConfig{}, 25.0);
  ASSERT_EQ(events.size(), 1u);
  EXPECT_EQ(events[0].start_frame, 1);
  EXPECT_EQ(events[0].end_frame, 12);
  EXPECT_EQ(events[0].min_ttc, 2.2);
  EXPECT_EQ(events[0].min_ttc_frame, 11);
}

TEST(ExtractEvents, MergeGapBoundaryInclusive)
{
  ConflictConfig config;
  config.merge_gap = 0.5;
  // 12 frames apart at 24 Hz is exactly 0.5 s.
  EXPECT_EQ(extract_events(series_of(two_dips(12)), config, 24.0).size(), 1u);
  EXPECT_EQ(extract_events(series_of(two_dips(13)), config, 24.0).size(), 2u);
}

TEST(ExtractEvents, MinDurationAppliesAfterMerging)
{
  ConflictConfig config;
  config.min_duration = 4;
  // Two single-frame runs 0.12 s apart merge into frames 1..4.
  EXPECT_EQ(extract_events(series_of({4, 2.9, 4, 4, 2.8, 4}), config, 25.0).size(), 1u);
  EXPECT_TRUE(extract_events(series_of({4, 2.9, 2.9, 4}), config, 25.0).empty());
}

TEST(ExtractEvents, TieGoesToEarliestFrameAndMissingTtcBreaksRuns)
{
  auto s = series_of({2.0, 1.5, 1.5, 2.0});
  auto events = extract_events(s, ConflictConfig{}, 25.0);
  ASSERT_EQ(events.size(), 1u);
  EXPECT_EQ(events[0].min_ttc_frame, 1);

  ConflictConfig no_merge;
  no_merge.merge_gap = 1e-3;
  s[1].ttc.reset();
  events = extract_events(s, no_merge, 25.0);
  ASSERT_EQ(events.size(), 2u);
  EXPECT_EQ(events[1].min_ttc_frame, 2);
}

TEST(ExtractEvents, ThresholdInclusive)
{
  EXPECT_EQ(extract_events(series_of({3.5, 3.0, 3.5}), ConflictConfig{}, 25.0).size(), 1u);
}

// Four cars in lane 3 at x = 0, 10, 75, 200 during frame 0.
Dataset spaced_fixture()
{
  std::vector<VehicleTrack> tracks;
  VehicleId id = 1;
  for (double x : {0.0, 10.0, 75.0, 200.0}) {
    tracks.push_back(make_track(id++, 4.5, 1.8, straight_states(0, 5, x, kLane3Y, 0.0, 0.0)));
  }
  return make_fixture(tracks);
}

TEST(CandidatePairs, InclusiveRadius)
{
  const auto pairs = candidate_pairs(spaced_fixture(), 0, ConflictConfig{});
  EXPECT_EQ(pairs, (std::vector<VehiclePair>{{1, 2}, {1, 3}, {2, 3}}));
  ConflictConfig tight;
  tight.pruning_radius = 74.999;
  EXPECT_EQ(candidate_pairs(spaced_fixture(), 0, tight), (std::vector<VehiclePair>{{1, 2}, {2, 3}}));
  EXPECT_TRUE(candidate_pairs(spaced_fixture(), 99, ConflictConfig{}).empty());
}

TEST(TtcSeries, NeverCoPresentIsEmpty)
{
  const Dataset d = make_fixture({
    make_track(1, 4.5, 1.8, straight_states(0, 10, 10.0, kLane3Y, 20.0, 0.0)),
    make_track(2, 4.5, 1.8, straight_states(20, 30, 30.0, kLane3Y, 20.0, 0.0)),
  });
  EXPECT_TRUE(ttc_series(d, {1, 2}, ConflictConfig{}).empty());
}

TEST(TtcSeries, HeadOnClosureDropsOneFramePerFrame)
{
  const Dataset d = make_fixture({
    make_track(1, 4.5, 1.8, straight_states(0, 40, 20.0, kLane3Y, 10.0, 0.0)),
    make_track(2, 4.5, 1.8, straight_states(0, 40, 60.0, kLane3Y, -10.0, 0.0)),
  });
  const auto s = ttc_series(d, {1, 2}, ConflictConfig{});
  ASSERT_EQ(s.size(), 41u);
  ASSERT_TRUE(s[0].ttc);
  EXPECT_NEAR(*s[0].ttc, 35.5 / 20.0, 1e-12);
  for (std::size_t i = 1; i < s.size() && *s[i].ttc > 0.0; ++i) {
    EXPECT_NEAR(*s[i - 1].ttc - *s[i].ttc, 0.04, 1e-9) << i;
  }
}

TEST(TtcSeries, ScalarAndAvx2Identical)
{
  if (!kernels::isa_supported(kernels::Isa::Avx2)) GTEST_SKIP() << "AVX2 variant not available";
  const Dataset d = generate(paper_like_scenario(2)).dataset;
  std::size_t compared = 0;
  for (const auto & p : candidate_pairs(d, 600, ConflictConfig{})) {
    const auto a = ttc_series(d, p, ConflictConfig{}, kernels::Isa::Scalar);
    const auto b = ttc_series(d, p, ConflictConfig{}, kernels::Isa::Avx2);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a[i].ttc, b[i].ttc);
      EXPECT_EQ(a[i].witness, b[i].witness);
    }
    compared += a.size();
  }
  EXPECT_GT(compared, 0u);
}

ConflictEvent only_event(const Dataset & d)
{
  const auto events = detect_conflicts(d, ConflictConfig{});
  EXPECT_EQ(events.size(), 1u);
  return events.empty() ? ConflictEvent{} : events.front();
}

TEST(Classify, SameLaneFollowerIsRearEnd)
{
  const auto e = only_event(make_fixture({
    make_track(1, 4.5, 1.8, straight_states(0, 30, 20.0, kLane3Y, 25.0, 0.0)),
    make_track(2, 4.5, 1.8, straight_states(0, 30, 35.0, kLane3Y, 20.0, 0.0)),
  }));
  EXPECT_TRUE(e.classified);
  EXPECT_EQ(e.conflict_class, ConflictClass::RearEnd);
  EXPECT_EQ(e.lead_id, 2);
  EXPECT_EQ(e.lag_id, 1);
  EXPECT_EQ(e.type_pair, TypePair::CarCar);
  EXPECT_NEAR(e.min_ttc, (15.0 - 4.5) / 5.0 - 30 * 0.2 / 5.0, 1e-9);
  EXPECT_EQ(e.min_ttc_frame, 30);
}

TEST(Classify, TruckLeadingCarIsTruckCar)
{
  const auto e = only_event(make_fixture({
    make_track(1, 4.5, 1.8, straight_states(0, 10, 20.0, kLane3Y, 25.0, 0.0)),
    make_track(2, 12.0, 2.5, straight_states(0, 10, 35.0, kLane3Y, 20.0, 0.0)),
  }));
  EXPECT_EQ(e.type_pair, TypePair::TruckCar);
  EXPECT_EQ(e.lead_id, 2);
  EXPECT_NEAR(e.min_ttc, (15.0 - 6.0 - 2.25) / 5.0 - 10 * 0.2 / 5.0, 1e-9);
}

TEST(Classify, AdjacentLanesAtMinFrameIsLaneChange)
{
  // The lag drifts towards lane 3 without leaving lane 4.
  const Dataset d = make_fixture({
    make_track(1, 4.5, 1.8, straight_states(0, 50, 20.0, kLane4Y, 25.0, 0.5)),
    make_track(2, 4.5, 1.8, straight_states(0, 50, 35.0, kLane3Y, 20.0, 0.0)),
  });
  EXPECT_TRUE(detect_lane_changes(d.tracks[0], d.site, 25).empty());
  const auto e = only_event(d);
  EXPECT_EQ(e.conflict_class, ConflictClass::LaneChange);
}

TEST(Classify, EpisodeDuringEventIsLaneChange)
{
  // The lead cuts from lane 4 into lane 3, crossing y = 7 at frame 32; from
  // then on both share lane 3.
  const Dataset d = make_fixture({
    make_track(1, 4.5, 1.8, straight_states(0, 60, 20.0, kLane3Y, 25.0, 0.0)),
    make_track(2, 4.5, 1.8, straight_states(0, 60, 35.0, kLane4Y, 20.0, 1.4)),
  });
  const auto eps = detect_lane_changes(d.tracks[1], d.site, 25);
  ASSERT_EQ(eps.size(), 1u);
  for (const auto & e : detect_conflicts(d, ConflictConfig{})) {
    EXPECT_EQ(e.conflict_class, ConflictClass::LaneChange);
    EXPECT_EQ(e.lead_id, 2);
  }
  ConflictEvent manual;
  manual.pair = {1, 2};
  manual.start_frame = 50;
  manual.end_frame = 60;
  manual.min_ttc_frame = 60;
  EXPECT_EQ(classify_event(manual, d).conflict_class, ConflictClass::LaneChange);
  // Outside the episode and with both in lane 3 the same event is rear-end.
  manual.start_frame = 55;
  EXPECT_EQ(classify_event(manual, d, 5).conflict_class, ConflictClass::RearEnd);
}

TEST(Classify, LocationIsMidpointAtMinFrame)
{
  const auto e = only_event(make_fixture({
    make_track(1, 4.5, 1.8, straight_states(0, 25, 20.0, kLane3Y, 25.0, 0.0)),
    make_track(2, 4.5, 1.8, straight_states(0, 25, 35.0, kLane3Y, 20.0, 0.0)),
  }));
  EXPECT_NEAR(e.location.x, (20.0 + 25.0 + 35.0 + 20.0) / 2.0, 1e-9);
  EXPECT_NEAR(e.location.y, kLane3Y, 1e-12);
}

TEST(Detect, EmptyDatasetGivesNoEvents)
{
  EXPECT_TRUE(detect_conflicts(make_dataset(site_template(), {}, false), ConflictConfig{}).empty());
}

TEST(Detect, InvalidConfigRejected)
{
  ConflictConfig c;
  c.ttc_threshold = 0.0;
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.ttc_threshold = 12.0;
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.min_duration = 0;
  EXPECT_THROW(detect_conflicts(spaced_fixture(), c), Error);
}

TEST(Detect, FourInjectionsRecoveredWithLabels)
{
  ScenarioSpec spec;
  spec.seed = 17;
  spec.fleet.n_cars = 30;
  spec.fleet.n_trucks = 10;
  spec.injections = {
    {VehicleClass::Car, VehicleClass::Car, 2.0, {150, lane_center_y(2)}, ConflictClass::RearEnd},
    {VehicleClass::Truck, VehicleClass::Car, 2.4, {100, lane_center_y(4)}, ConflictClass::RearEnd},
    {VehicleClass::Car, VehicleClass::Truck, 1.8, {60, lane_center_y(6)}, ConflictClass::LaneChange},
    {VehicleClass::Truck, VehicleClass::Truck, 2.7, {140, lane_center_y(5)}, ConflictClass::LaneChange},
  };
  const auto g = generate(spec);
  const auto events = detect_conflicts(g.dataset, ConflictConfig{});
  ASSERT_EQ(events.size(), 4u);
  for (const auto & t : g.truth) {
    int matches = 0;
    for (const auto & e : events) {
      if (e.pair != VehiclePair::of(t.lead_id, t.lag_id)) continue;
      ++matches;
      EXPECT_EQ(e.type_pair, t.type_pair);
      EXPECT_EQ(e.conflict_class, t.conflict_class);
      EXPECT_EQ(e.lead_id, t.lead_id);
      EXPECT_NEAR(e.min_ttc, spec.injections[t.index].target_min_ttc, 0.05);
    }
    EXPECT_EQ(matches, 1) << "injection " << t.index;
  }
}

TEST(Detect, IndependentOfThreadsAndKernel)
{
  const Dataset d = generate(paper_like_scenario(4)).dataset;
  const auto base = detect_conflicts(d, ConflictConfig{}, {1, kernels::Isa::Scalar, -1});
  EXPECT_FALSE(base.empty());
  for (unsigned threads : {1u, 2u, 3u, 8u}) {
    for (auto isa : kernels::supported_isas()) {
      EXPECT_EQ(detect_conflicts(d, ConflictConfig{}, {threads, isa, -1}), base)
        << threads << " threads, " << kernels::to_string(isa);
    }
  }
  for (std::size_t i = 1; i < base.size(); ++i) {
    EXPECT_TRUE(
      base[i - 1].start_frame < base[i].start_frame ||
      (base[i - 1].start_frame == base[i].start_frame && base[i - 1].pair < base[i].pair));
  }
}

TEST(ConflictsCsv, RoundTrip)
{
  const auto events = detect_conflicts(generate(paper_like_scenario(5)).dataset, ConflictConfig{});
  const std::string text = conflicts_to_csv(events);
  std::istringstream in(text);
  const auto back = parse_conflicts_csv(in);
  EXPECT_EQ(back, events);
  EXPECT_EQ(conflicts_to_csv(back), text);
}

TEST(ConflictsCsv, BadCellNamesLineAndColumn)
{
  std::istringstream in(
    "pair_a,pair_b,start_frame,end_frame,min_ttc,min_ttc_frame,x,y,lead_id,lag_id,type_pair,conflict_class\n"
    "1,2,10,20,1.5,15,50,1,2,1,CarBus,RearEnd\n");
  try {
    parse_conflicts_csv(in);
    FAIL();
  } catch (const Error & e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
    EXPECT_NE(msg.find("type_pair"), std::string::npos) << msg;
  }
}

}  // namespace
}  // namespace mergesafe
