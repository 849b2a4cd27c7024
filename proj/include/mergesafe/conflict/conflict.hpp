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

#ifndef MERGESAFE__CONFLICT__CONFLICT_HPP_
#define MERGESAFE__CONFLICT__CONFLICT_HPP_

#include "mergesafe/core/types.hpp"
#include "mergesafe/geometry/ttc.hpp"
#include "mergesafe/kernels/dispatch.hpp"

#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mergesafe
{

struct ConflictConfig
{
  double ttc_threshold{3.0};
  double pruning_radius{75.0};
  /// Runs separated by at most this many seconds merge into one event.
  double merge_gap{0.5};
  /// Events shorter than this many frames are dropped.
  int min_duration{1};

  /// Throws a validation error unless every field is positive and
  /// ttc_threshold <= 10.
  void validate() const;
};

/// Unordered vehicle pair stored with a < b.
struct VehiclePair
{
  VehicleId a{0};
  VehicleId b{0};

  static VehiclePair of(VehicleId x, VehicleId y) { return x < y ? VehiclePair{x, y} : VehiclePair{y, x}; }
  auto operator<=>(const VehiclePair &) const = default;
};

struct TtcSample
{
  Frame frame{0};
  VehiclePair pair;
  std::optional<double> ttc;
  std::optional<double> collision_distance;
  WitnessSide witness{WitnessSide::None};
  Corner witness_corner{Corner::FrontLeft};
};

/// (lead class, lag class).
enum class TypePair { CarCar, CarTruck, TruckCar, TruckTruck };
enum class ConflictClass { LaneChange, RearEnd };

inline constexpr TypePair kAllTypePairs[] = {
  TypePair::CarCar, TypePair::CarTruck, TypePair::TruckCar, TypePair::TruckTruck};

std::string_view to_string(TypePair t);
std::string_view to_string(ConflictClass c);
std::optional<TypePair> parse_type_pair(std::string_view s);
std::optional<ConflictClass> parse_conflict_class(std::string_view s);
TypePair make_type_pair(VehicleClass lead, VehicleClass lag);

struct ConflictEvent
{
  VehiclePair pair;
  Frame start_frame{0};
  Frame end_frame{0};
  double min_ttc{0.0};
  Frame min_ttc_frame{0};
  /// Midpoint of the two vehicle centers at min_ttc_frame.
  Vec2 location;
  VehicleId lead_id{0};
  VehicleId lag_id{0};
  TypePair type_pair{TypePair::CarCar};
  ConflictClass conflict_class{ConflictClass::RearEnd};
  /// False until classify_event has run.
  bool classified{false};

  bool operator==(const ConflictEvent &) const = default;
};

/// Pairs present at `frame` whose centers are at most pruning_radius apart.
std::vector<VehiclePair> candidate_pairs(const Dataset & dataset, Frame frame, const ConflictConfig & config);

/// One sample per co-present frame that passes pruning, in frame order.
std::vector<TtcSample> ttc_series(
  const Dataset & dataset, VehiclePair pair, const ConflictConfig & config,
  kernels::Isa isa = kernels::active_isa());

/// Groups below-threshold runs into events. Samples must be frame-ordered and
/// belong to one pair. Location and classification fields are left unset.
std::vector<ConflictEvent> extract_events(
  std::span<const TtcSample> series, const ConflictConfig & config, double frame_rate);

/// Sets location, lead/lag, type_pair and conflict_class. `window_frames`
/// is the lane-change marking window (negative: one second of frames).
ConflictEvent classify_event(ConflictEvent event, const Dataset & dataset, int window_frames = -1);

struct DetectOptions
{
  /// Worker threads; 0 or 1 runs on the calling thread.
  unsigned threads{1};
  kernels::Isa isa{kernels::active_isa()};
  int window_frames{-1};
};

/// Full scan, sorted by (start_frame, pair.a, pair.b). Output is independent
/// of the thread count and the kernel variant.
std::vector<ConflictEvent> detect_conflicts(
  const Dataset & dataset, const ConflictConfig & config, const DetectOptions & options = {});

/// CSV: pair_a,pair_b,start_frame,end_frame,min_ttc,min_ttc_frame,x,y,lead_id,lag_id,type_pair,conflict_class
std::string conflicts_to_csv(std::span<const ConflictEvent> events);
std::vector<ConflictEvent> parse_conflicts_csv(std::istream & in);

}  // namespace mergesafe

#endif  // MERGESAFE__CONFLICT__CONFLICT_HPP_
