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

#ifndef MERGESAFE__SYNTH__SCENARIO_HPP_
#define MERGESAFE__SYNTH__SCENARIO_HPP_

#include "mergesafe/conflict/conflict.hpp"
#include "mergesafe/core/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mergesafe
{

/// Straight merging section, 215 m at 25 Hz, lanes 3.5 m wide, travel in +x.
/// Mainline lanes 1..5 span x in [0, 215] with lane k at y in
/// [(5 - k) * 3.5, (6 - k) * 3.5] (lane 1 is innermost). The acceleration lane
/// 6 lies below lane 5 over the full length; the on-ramp lane 7 lies below it
/// and ends at x = 120.
inline constexpr LaneId kAccelerationLane = 6;
inline constexpr LaneId kOnRampLane = 7;
inline constexpr int kMainlineLanes = 5;
inline constexpr double kLaneWidth = 3.5;
inline constexpr double kRampEndX = 120.0;

SiteGeometry site_template();

/// Lateral centre of a template lane.
double lane_center_y(LaneId lane);

struct FleetSpec
{
  /// Totals including the vehicles of every injection.
  int n_cars{65};
  int n_trucks{35};
  double car_speed_mean{22.0};
  double car_speed_sd{2.0};
  double truck_speed_mean{18.0};
  double truck_speed_sd{2.0};
};

struct ConflictInjection
{
  VehicleClass lead_class{VehicleClass::Car};
  VehicleClass lag_class{VehicleClass::Car};
  /// Seconds, in (0, 3].
  double target_min_ttc{2.0};
  /// Requested midpoint of the two vehicle centres at the minimum-TTC frame.
  /// The lateral coordinate only selects the lane.
  Vec2 location;
  ConflictClass conflict_class_intent{ConflictClass::RearEnd};
};

struct ScenarioSpec
{
  std::uint64_t seed{0};
  FleetSpec fleet;
  std::vector<ConflictInjection> injections;

  /// Throws a validation error for negative counts, non-positive speed means,
  /// negative sds or injection targets outside (0, 3].
  void validate() const;
};

/// Where and how each injection was realised.
struct InjectionTruth
{
  std::size_t index{0};
  VehicleId lead_id{0};
  VehicleId lag_id{0};
  Frame min_ttc_frame{0};
  double min_ttc{0.0};
  Vec2 location;
  TypePair type_pair{TypePair::CarCar};
  ConflictClass conflict_class{ConflictClass::RearEnd};
};

struct GeneratedScenario
{
  Dataset dataset;
  std::vector<InjectionTruth> truth;
};

/// Background traffic follows its lane at constant speed (on-ramp vehicles
/// slow down, merge into the acceleration lane and speed up again); every
/// background vehicle is delayed until it has no projected contact within 4 s
/// with any vehicle already placed. Each injection is a scripted closing pair
/// whose TTC is minimal and equal to the target at one frame. Throws a
/// validation error naming the injection when it cannot be placed.
GeneratedScenario generate(const ScenarioSpec & spec);

/// About 100 vehicles with 35 % trucks, twelve lane-change injections on the
/// on-ramp/acceleration lane whose targets order CarCar < CarTruck <
/// TruckCar < TruckTruck, and two rear-end injections on the mainline.
ScenarioSpec paper_like_scenario(std::uint64_t seed);

ScenarioSpec parse_scenario_json(const std::string & text);
std::string scenario_to_json(const ScenarioSpec & spec);
std::string truth_to_json(const std::vector<InjectionTruth> & truth);

}  // namespace mergesafe

#endif  // MERGESAFE__SYNTH__SCENARIO_HPP_
