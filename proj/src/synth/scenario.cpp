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

#include "mergesafe/synth/scenario.hpp"

#include "mergesafe/core/error.hpp"
#include "mergesafe/core/ingest.hpp"
#include "mergesafe/core/lanes.hpp"
#include "mergesafe/geometry/ttc.hpp"
#include "mergesafe/geometry/ttc_oracle.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace mergesafe
{

namespace
{

constexpr double kSegmentLength = 215.0;
constexpr double kFrameRate = 25.0;
// Background vehicles must have no projected contact within this many seconds.
constexpr double kSafetyHorizon = 4.0;
constexpr double kRetryStep = 0.5;
constexpr int kMaxRetries = 4000;
// Lateral move of an injected lead vehicle, in frames, ending at the minimum-TTC frame.
constexpr int kInjectionLateralFrames = 30;
// Injected pairs start this far apart in time.
constexpr double kInjectionSpacing = 5.0;
constexpr double kFirstInjectionTime = 16.0;
constexpr double kMaxTargetTtc = 3.0;

Lane straight_lane(LaneId id, LaneType type, double x0, double x1, double y_low)
{
  const double y_high = y_low + kLaneWidth;
  const double y_mid = y_low + 0.5 * kLaneWidth;
  Lane lane;
  lane.lane_id = id;
  lane.lane_type = type;
  lane.centerline = {{x0, y_mid}, {x1, y_mid}};
  lane.left_boundary = {{x0, y_high}, {x1, y_high}};
  lane.right_boundary = {{x0, y_low}, {x1, y_low}};
  return lane;
}

struct Sim
{
  VehicleClass vclass{VehicleClass::Car};
  double length{0.0};
  double width{0.0};
  /// Consecutive frames.
  std::vector<KinematicState> states;
  /// Injection index, or -1 for background traffic.
  int injection{-1};
  bool is_lead{false};

  Frame first() const { return states.front().frame; }
  Frame last() const { return states.back().frame; }
};

PairState pair_state(const Sim & a, const KinematicState & sa, const Sim & b, const KinematicState & sb)
{
  return {
    OrientedBox{sa.position(), sa.heading, a.length, a.width}, sa.velocity(),
    OrientedBox{sb.position(), sb.heading, b.length, b.width}, sb.velocity()};
}

bool in_contact_soon(const Sim & a, const Sim & b)
{
  const Frame lo = std::max(a.first(), b.first());
  const Frame hi = std::min(a.last(), b.last());
  const double reach = 0.5 * (a.length + b.length + a.width + b.width);
  for (Frame f = lo; f <= hi; ++f) {
    const auto & sa = a.states[static_cast<std::size_t>(f - a.first())];
    const auto & sb = b.states[static_cast<std::size_t>(f - b.first())];
    const double horizon_reach = reach + kSafetyHorizon * (sa.speed() + sb.speed());
    if (distance(sa.position(), sb.position()) > horizon_reach) continue;
    if (first_contact_time(pair_state(a, sa, b, sb), kSafetyHorizon)) return true;
  }
  return false;
}

bool conflicts_with_any(const Sim & v, const std::vector<Sim> & placed, int skip_injection)
{
  for (const auto & other : placed) {
    if (skip_injection >= 0 && other.injection == skip_injection) continue;
    if (other.last() < v.first() || v.last() < other.first()) continue;
    if (in_contact_soon(v, other)) return true;
  }
  return false;
}

void set_heading(KinematicState & s) { s.heading = normalize_angle(std::atan2(s.vy, s.vx)); }

class Sampler
{
public:
  Sampler(std::uint64_t seed, const FleetSpec & fleet) : rng_(seed), fleet_(fleet) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  double speed(VehicleClass c)
  {
    const bool car = c == VehicleClass::Car;
    const double mean = car ? fleet_.car_speed_mean : fleet_.truck_speed_mean;
    const double sd = car ? fleet_.car_speed_sd : fleet_.truck_speed_sd;
    const double v = sd > 0.0 ? std::normal_distribution<double>(mean, sd)(rng_) : mean;
    return std::clamp(v, 0.5 * mean, 1.5 * mean);
  }

  void dimensions(VehicleClass c, double & length, double & width)
  {
    if (c == VehicleClass::Car) {
      length = uniform(4.0, 5.2);
      width = uniform(1.7, 2.0);
    } else {
      length = uniform(8.0, 16.0);
      width = uniform(2.4, 2.6);
    }
  }

  std::mt19937_64 & engine() { return rng_; }

private:
  std::mt19937_64 rng_;
  FleetSpec fleet_;
};

// Mainline vehicle whose centre passes x = 0 at time t0.
Sim mainline_vehicle(VehicleClass c, double length, double width, LaneId lane, double v, double t0)
{
  Sim sim{c, length, width, {}, -1, false};
  const double y = lane_center_y(lane);
  for (Frame f = static_cast<Frame>(std::ceil(t0 * kFrameRate));; ++f) {
    const double x = v * (static_cast<double>(f) / kFrameRate - t0);
    if (x < 0.0) continue;
    if (x > kSegmentLength) break;
    KinematicState s{f, x, y, v, 0.0, 0.0, std::nullopt};
    set_heading(s);
    sim.states.push_back(s);
  }
  return sim;
}

// Ramp speed factor along x: slows to 75 % at x = 60, then recovers.
double ramp_speed_factor(double x)
{
  if (x <= 60.0) return 1.0 - 0.25 * x / 60.0;
  return 0.75 + 0.25 * std::min(x - 60.0, 155.0) / 155.0;
}

// On-ramp vehicle entering at x = 0 at time t0 and moving into the
// acceleration lane over [merge_x, merge_x + merge_len].
Sim ramp_vehicle(
  VehicleClass c, double length, double width, double v0, double t0, double merge_x, double merge_len)
{
  Sim sim{c, length, width, {}, -1, false};
  const double y_from = lane_center_y(kOnRampLane);
  const double y_to = lane_center_y(kAccelerationLane);
  Frame f = static_cast<Frame>(std::ceil(t0 * kFrameRate));
  double x = v0 * (static_cast<double>(f) / kFrameRate - t0);
  while (x <= kSegmentLength) {
    const double vx = v0 * ramp_speed_factor(x);
    const double s = std::clamp((x - merge_x) / merge_len, 0.0, 1.0);
    double y = y_from + (y_to - y_from) * 0.5 * (1.0 - std::cos(std::numbers::pi * s));
    double vy = 0.0;
    if (s > 0.0 && s < 1.0) {
      vy = (y_to - y_from) * 0.5 * std::numbers::pi / merge_len * std::sin(std::numbers::pi * s) * vx;
    }
    if (s >= 1.0) y = y_to;
    KinematicState st{f, x, y, vx, vy, 0.0, std::nullopt};
    set_heading(st);
    sim.states.push_back(st);
    x += vx / kFrameRate;
    ++f;
  }
  return sim;
}

std::string describe(std::size_t index, const ConflictInjection & inj)
{
  return "injection " + std::to_string(index) + " (" + std::string(to_string(inj.lead_class)) +
         " leading " + std::string(to_string(inj.lag_class)) + ", " +
         std::string(to_string(inj.conflict_class_intent)) + " at (" + format_double(inj.location.x) +
         ", " + format_double(inj.location.y) + "))";
}

// Lane the injected lead vehicle leaves for `target`; nullopt when none fits.
std::optional<LaneId> source_lane(LaneId target, double crossing_x)
{
  if (target == kAccelerationLane) {
    if (crossing_x <= kRampEndX - 5.0) return kOnRampLane;
    return kMainlineLanes;
  }
  if (target == kOnRampLane) return std::nullopt;
  if (target == kMainlineLanes) return kAccelerationLane;
  return target + 1;
}

struct Encounter
{
  Sim lead;
  Sim lag;
  Frame min_frame{0};
  Vec2 location;
};

// Scripted pair whose TTC equals the target at `k_star` and is larger at every
// other frame. Lag follows lead at closing speed c with gap c * T at k_star,
// then brakes until the speeds match. A lane-changing lead reaches the centre
// of the target lane exactly at k_star.
Encounter build_encounter(
  const ConflictInjection & inj, LaneId target, LaneId from, Frame k_star, double v_lead, double closing,
  double len_l, double wid_l, double len_f, double wid_f)
{
  const double fps = kFrameRate;
  const double T = inj.target_min_ttc;
  const double v_lag = v_lead + closing;
  const double decel = std::max(3.0, 1.5 * closing / T);
  const double brake_time = closing / decel;
  const double centre_gap = closing * T + 0.5 * (len_l + len_f);
  const double x_lead = inj.location.x + 0.5 * centre_gap;
  const double x_lag = inj.location.x - 0.5 * centre_gap;
  const double y_to = lane_center_y(target);
  const double y_from = lane_center_y(from);

  Encounter enc;
  enc.min_frame = k_star;
  enc.location = {0.5 * (x_lead + x_lag), y_to};
  enc.lead = Sim{inj.lead_class, len_l, wid_l, {}, -1, true};
  enc.lag = Sim{inj.lag_class, len_f, wid_f, {}, -1, false};

  const Frame lead_first = k_star - static_cast<Frame>(std::floor(x_lead * fps / v_lead));
  for (Frame f = lead_first;; ++f) {
    const double x = x_lead + v_lead * static_cast<double>(f - k_star) / fps;
    if (x < 0.0) continue;
    if (x > kSegmentLength) break;
    double y = y_to;
    double vy = 0.0;
    if (inj.conflict_class_intent == ConflictClass::LaneChange && f < k_star) {
      const Frame move_start = k_star - kInjectionLateralFrames;
      y = y_from;
      if (f >= move_start) {
        // Ease-out: full lateral speed at the start, zero at k_star.
        const double s = static_cast<double>(f - move_start) / kInjectionLateralFrames;
        y = y_from + (y_to - y_from) * std::sin(0.5 * std::numbers::pi * s);
        vy = (y_to - y_from) * 0.5 * std::numbers::pi * std::cos(0.5 * std::numbers::pi * s) /
             (kInjectionLateralFrames / fps);
      }
    }
    KinematicState s{f, x, y, v_lead, vy, 0.0, std::nullopt};
    set_heading(s);
    enc.lead.states.push_back(s);
  }

  const Frame lag_first = k_star - static_cast<Frame>(std::floor(x_lag * fps / v_lag));
  const double x_brake_end = x_lag + v_lag * brake_time - 0.5 * decel * brake_time * brake_time;
  for (Frame f = lag_first;; ++f) {
    const double tau = static_cast<double>(f - k_star) / fps;
    double x = 0.0;
    double vx = 0.0;
    if (tau <= 0.0) {
      x = x_lag + v_lag * tau;
      vx = v_lag;
    } else if (tau <= brake_time) {
      x = x_lag + v_lag * tau - 0.5 * decel * tau * tau;
      vx = v_lag - decel * tau;
    } else {
      x = x_brake_end + v_lead * (tau - brake_time);
      vx = v_lead;
    }
    if (x < 0.0) continue;
    if (x > kSegmentLength) break;
    KinematicState s{f, x, y_to, vx, 0.0, 0.0, std::nullopt};
    set_heading(s);
    enc.lag.states.push_back(s);
  }
  return enc;
}

bool inside_lanes(const Sim & sim, const SiteGeometry & site)
{
  for (const auto & s : sim.states) {
    if (!assign_lane(s.position(), site)) return false;
  }
  return true;
}

// Minimum analytic TTC of the pair over co-present frames and its frame.
std::optional<std::pair<double, Frame>> series_minimum(const Sim & a, const Sim & b)
{
  std::optional<std::pair<double, Frame>> best;
  const Frame lo = std::max(a.first(), b.first());
  const Frame hi = std::min(a.last(), b.last());
  for (Frame f = lo; f <= hi; ++f) {
    const auto & sa = a.states[static_cast<std::size_t>(f - a.first())];
    const auto & sb = b.states[static_cast<std::size_t>(f - b.first())];
    const auto r = ttc(pair_state(a, sa, b, sb));
    if (r.ttc && (!best || *r.ttc < best->first)) best = std::pair{*r.ttc, f};
  }
  return best;
}

VehicleClass parse_vehicle_class(const std::string & s)
{
  if (s == "Car") return VehicleClass::Car;
  if (s == "Truck") return VehicleClass::Truck;
  throw validation_error("scenario: unknown vehicle class '" + s + "' (expected Car or Truck)");
}

}  // namespace

double lane_center_y(LaneId lane)
{
  if (lane >= 1 && lane <= kMainlineLanes) return (kMainlineLanes - lane + 0.5) * kLaneWidth;
  if (lane == kAccelerationLane) return -0.5 * kLaneWidth;
  if (lane == kOnRampLane) return -1.5 * kLaneWidth;
  throw validation_error("no template lane " + std::to_string(lane));
}

SiteGeometry site_template()
{
  SiteGeometry site;
  site.segment_length = kSegmentLength;
  site.frame_rate = kFrameRate;
  for (LaneId k = 1; k <= kMainlineLanes; ++k) {
    site.lanes.push_back(
      straight_lane(k, LaneType::Mainline, 0.0, kSegmentLength, (kMainlineLanes - k) * kLaneWidth));
  }
  site.lanes.push_back(
    straight_lane(kAccelerationLane, LaneType::Acceleration, 0.0, kSegmentLength, -kLaneWidth));
  site.lanes.push_back(straight_lane(kOnRampLane, LaneType::OnRamp, 0.0, kRampEndX, -2.0 * kLaneWidth));
  return site;
}

void ScenarioSpec::validate() const
{
  if (fleet.n_cars < 0 || fleet.n_trucks < 0) throw validation_error("scenario: vehicle counts must be >= 0");
  if (!(fleet.car_speed_mean > 0.0) || !(fleet.truck_speed_mean > 0.0)) {
    throw validation_error("scenario: speed means must be positive");
  }
  if (!(fleet.car_speed_sd >= 0.0) || !(fleet.truck_speed_sd >= 0.0)) {
    throw validation_error("scenario: speed standard deviations must be >= 0");
  }
  for (std::size_t i = 0; i < injections.size(); ++i) {
    const double t = injections[i].target_min_ttc;
    if (!(t > 0.0) || !(t <= kMaxTargetTtc)) {
      throw validation_error(describe(i, injections[i]) + ": target_min_ttc must be in (0, 3]");
    }
    if (!std::isfinite(injections[i].location.x) || !std::isfinite(injections[i].location.y)) {
      throw validation_error(describe(i, injections[i]) + ": location must be finite");
    }
  }
}

GeneratedScenario generate(const ScenarioSpec & spec)
{
  spec.validate();
  const SiteGeometry site = site_template();
  Sampler sampler(spec.seed, spec.fleet);

  int injected_cars = 0;
  int injected_trucks = 0;
  for (const auto & inj : spec.injections) {
    for (VehicleClass c : {inj.lead_class, inj.lag_class}) (c == VehicleClass::Car ? injected_cars : injected_trucks)++;
  }
  const int bg_cars = spec.fleet.n_cars - injected_cars;
  const int bg_trucks = spec.fleet.n_trucks - injected_trucks;
  if (bg_cars < 0 || bg_trucks < 0) {
    throw validation_error("scenario: fleet counts are smaller than the vehicles the injections need");
  }

  std::vector<Sim> placed;
  std::vector<Encounter> encounters;

  // Injections first, in order, each no earlier than the previous one.
  double t_star = kFirstInjectionTime;
  for (std::size_t i = 0; i < spec.injections.size(); ++i) {
    const ConflictInjection & inj = spec.injections[i];
    const std::string name = describe(i, inj);
    const auto target = assign_lane(inj.location, site);
    if (!target) throw validation_error(name + ": location is outside every lane");

    const double v_lead = sampler.speed(inj.lead_class);
    const double closing = sampler.uniform(2.0, 4.0);
    double len_l = 0.0, wid_l = 0.0, len_f = 0.0, wid_f = 0.0;
    sampler.dimensions(inj.lead_class, len_l, wid_l);
    sampler.dimensions(inj.lag_class, len_f, wid_f);

    LaneId from = *target;
    if (inj.conflict_class_intent == ConflictClass::LaneChange) {
      const double x_lead = inj.location.x + 0.5 * (closing * inj.target_min_ttc + 0.5 * (len_l + len_f));
      // The lead crosses the lane boundary a third of the way into its move.
      const double crossing_x = x_lead - (2.0 / 3.0) * kInjectionLateralFrames * v_lead / kFrameRate;
      const auto src = source_lane(*target, crossing_x);
      if (!src) throw validation_error(name + ": no lane to change from into lane " + std::to_string(*target));
      from = *src;
    }

    bool done = false;
    for (int attempt = 0; attempt < kMaxRetries && !done; ++attempt) {
      const Frame k_star = static_cast<Frame>(std::lround(t_star * kFrameRate));
      Encounter enc =
        build_encounter(inj, *target, from, k_star, v_lead, closing, len_l, wid_l, len_f, wid_f);
      if (enc.lead.states.empty() || enc.lag.states.empty() || enc.lead.first() > k_star ||
          enc.lag.first() > k_star || enc.lead.last() < k_star || enc.lag.last() < k_star) {
        throw validation_error(name + ": encounter does not fit inside the segment");
      }
      if (!inside_lanes(enc.lead, site) || !inside_lanes(enc.lag, site)) {
        throw validation_error(name + ": encounter leaves the site lanes");
      }
      const auto minimum = series_minimum(enc.lead, enc.lag);
      if (!minimum || minimum->second != k_star ||
          std::abs(minimum->first - inj.target_min_ttc) > 1e-6) {
        throw validation_error(name + ": scripted encounter does not reach its target TTC");
      }
      enc.lead.injection = static_cast<int>(i);
      enc.lag.injection = static_cast<int>(i);
      if (conflicts_with_any(enc.lead, placed, -1) || conflicts_with_any(enc.lag, placed, -1)) {
        t_star += kRetryStep;
        continue;
      }
      placed.push_back(enc.lead);
      placed.push_back(enc.lag);
      encounters.push_back(std::move(enc));
      done = true;
    }
    if (!done) throw validation_error(name + ": overlaps other placements at every tried time");
    t_star += kInjectionSpacing;
  }

  // Background traffic, spread over the injection timeline.
  std::vector<VehicleClass> classes;
  classes.insert(classes.end(), static_cast<std::size_t>(bg_cars), VehicleClass::Car);
  classes.insert(classes.end(), static_cast<std::size_t>(bg_trucks), VehicleClass::Truck);
  std::shuffle(classes.begin(), classes.end(), sampler.engine());
  const double span = std::max(t_star + 10.0, 1.2 * static_cast<double>(classes.size()));
  const double headway = classes.empty() ? 0.0 : span / static_cast<double>(classes.size());
  for (std::size_t j = 0; j < classes.size(); ++j) {
    const VehicleClass c = classes[j];
    double length = 0.0, width = 0.0;
    sampler.dimensions(c, length, width);
    const bool ramp = sampler.uniform(0.0, 1.0) < 0.2;
    LaneId lane = kOnRampLane;
    if (!ramp) {
      const int lo = c == VehicleClass::Truck ? 3 : 1;
      lane = std::uniform_int_distribution<int>(lo, kMainlineLanes)(sampler.engine());
    }
    double v = sampler.speed(c);
    if (!ramp) v += 0.4 * (kMainlineLanes - lane);
    const double merge_x = sampler.uniform(40.0, 70.0);
    double t0 = static_cast<double>(j) * headway;
    bool done = false;
    for (int attempt = 0; attempt < kMaxRetries && !done; ++attempt, t0 += kRetryStep) {
      Sim sim = ramp ? ramp_vehicle(c, length, width, v, t0, merge_x, 40.0)
                     : mainline_vehicle(c, length, width, lane, v, t0);
      if (sim.states.empty() || conflicts_with_any(sim, placed, -1)) continue;
      placed.push_back(std::move(sim));
      done = true;
    }
    if (!done) throw validation_error("scenario: could not place background vehicle " + std::to_string(j));
  }

  // Identifiers follow entry order.
  std::vector<std::size_t> order(placed.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return placed[x].first() < placed[y].first();
  });
  std::vector<VehicleTrack> tracks;
  std::vector<VehicleId> id_of(placed.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    const Sim & sim = placed[order[rank]];
    const VehicleId id = static_cast<VehicleId>(rank + 1);
    id_of[order[rank]] = id;
    tracks.push_back({id, sim.vclass, sim.length, sim.width, sim.states});
  }

  GeneratedScenario out;
  out.dataset = make_dataset(site, std::move(tracks), false);
  for (std::size_t i = 0; i < placed.size(); ++i) {
    const Sim & sim = placed[i];
    if (sim.injection < 0 || !sim.is_lead) continue;
    const auto idx = static_cast<std::size_t>(sim.injection);
    const Encounter & enc = encounters[idx];
    InjectionTruth t;
    t.index = idx;
    t.lead_id = id_of[i];
    t.lag_id = id_of[i + 1];
    t.min_ttc_frame = enc.min_frame;
    t.min_ttc = spec.injections[idx].target_min_ttc;
    t.location = enc.location;
    t.type_pair = make_type_pair(spec.injections[idx].lead_class, spec.injections[idx].lag_class);
    t.conflict_class = spec.injections[idx].conflict_class_intent;
    out.truth.push_back(t);
  }
  return out;
}

ScenarioSpec paper_like_scenario(std::uint64_t seed)
{
  ScenarioSpec spec;
  spec.seed = seed;
  spec.fleet = FleetSpec{};
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };

  struct Band
  {
    TypePair pair;
    double targets[3];
  };
  // Tighter gaps for car-car, looser for truck-truck.
  const Band bands[] = {
    {TypePair::CarCar, {1.2, 1.4, 1.6}},
    {TypePair::CarTruck, {1.7, 1.9, 2.1}},
    {TypePair::TruckCar, {2.1, 2.3, 2.5}},
    {TypePair::TruckTruck, {2.5, 2.7, 2.9}},
  };
  const auto lead_of = [](TypePair p) {
    return p == TypePair::CarCar || p == TypePair::CarTruck ? VehicleClass::Car : VehicleClass::Truck;
  };
  const auto lag_of = [](TypePair p) {
    return p == TypePair::CarCar || p == TypePair::TruckCar ? VehicleClass::Car : VehicleClass::Truck;
  };
  int n = 0;
  for (const Band & band : bands) {
    for (double target : band.targets) {
      ConflictInjection inj;
      inj.lead_class = lead_of(band.pair);
      inj.lag_class = lag_of(band.pair);
      inj.target_min_ttc = target + uniform(-0.04, 0.04);
      inj.conflict_class_intent = ConflictClass::LaneChange;
      // Most merges go from the on-ramp into the acceleration lane; two go
      // from the acceleration lane into the outer mainline lane.
      if (n == 4 || n == 7) {
        inj.location = {uniform(130.0, 180.0), lane_center_y(kMainlineLanes)};
      } else {
        inj.location = {uniform(45.0, 90.0), lane_center_y(kAccelerationLane)};
      }
      spec.injections.push_back(inj);
      ++n;
    }
  }
  spec.injections.push_back(
    {VehicleClass::Car, VehicleClass::Car, 2.2 + uniform(-0.1, 0.1), {uniform(120.0, 170.0), lane_center_y(2)},
     ConflictClass::RearEnd});
  spec.injections.push_back(
    {VehicleClass::Truck, VehicleClass::Car, 2.6 + uniform(-0.1, 0.1), {uniform(80.0, 140.0), lane_center_y(4)},
     ConflictClass::RearEnd});
  return spec;
}

ScenarioSpec parse_scenario_json(const std::string & text)
{
  using nlohmann::json;
  ScenarioSpec spec;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw validation_error("scenario: top level must be an object");
    spec.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("fleet")) {
      const json & f = j.at("fleet");
      spec.fleet.n_cars = f.value("n_cars", spec.fleet.n_cars);
      spec.fleet.n_trucks = f.value("n_trucks", spec.fleet.n_trucks);
      spec.fleet.car_speed_mean = f.value("car_speed_mean", spec.fleet.car_speed_mean);
      spec.fleet.car_speed_sd = f.value("car_speed_sd", spec.fleet.car_speed_sd);
      spec.fleet.truck_speed_mean = f.value("truck_speed_mean", spec.fleet.truck_speed_mean);
      spec.fleet.truck_speed_sd = f.value("truck_speed_sd", spec.fleet.truck_speed_sd);
    }
    if (j.contains("injections")) {
      for (const json & item : j.at("injections")) {
        ConflictInjection inj;
        inj.lead_class = parse_vehicle_class(item.at("lead_class").get<std::string>());
        inj.lag_class = parse_vehicle_class(item.at("lag_class").get<std::string>());
        inj.target_min_ttc = item.at("target_min_ttc").get<double>();
        inj.location = {item.at("location").at("x").get<double>(), item.at("location").at("y").get<double>()};
        const auto cc = parse_conflict_class(item.at("conflict_class").get<std::string>());
        if (!cc) throw validation_error("scenario: conflict_class must be LaneChange or RearEnd");
        inj.conflict_class_intent = *cc;
        spec.injections.push_back(inj);
      }
    }
  } catch (const json::exception & e) {
    throw validation_error(std::string("scenario: ") + e.what());
  }
  spec.validate();
  return spec;
}

std::string scenario_to_json(const ScenarioSpec & spec)
{
  nlohmann::ordered_json j;
  j["seed"] = spec.seed;
  j["fleet"] = {
    {"n_cars", spec.fleet.n_cars},
    {"n_trucks", spec.fleet.n_trucks},
    {"car_speed_mean", spec.fleet.car_speed_mean},
    {"car_speed_sd", spec.fleet.car_speed_sd},
    {"truck_speed_mean", spec.fleet.truck_speed_mean},
    {"truck_speed_sd", spec.fleet.truck_speed_sd}};
  j["injections"] = nlohmann::ordered_json::array();
  for (const auto & inj : spec.injections) {
    j["injections"].push_back({
      {"lead_class", std::string(to_string(inj.lead_class))},
      {"lag_class", std::string(to_string(inj.lag_class))},
      {"target_min_ttc", inj.target_min_ttc},
      {"location", {{"x", inj.location.x}, {"y", inj.location.y}}},
      {"conflict_class", std::string(to_string(inj.conflict_class_intent))},
    });
  }
  return j.dump(2) + "\n";
}

std::string truth_to_json(const std::vector<InjectionTruth> & truth)
{
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto & t : truth) {
    j.push_back({
      {"index", t.index},
      {"lead_id", t.lead_id},
      {"lag_id", t.lag_id},
      {"min_ttc_frame", t.min_ttc_frame},
      {"min_ttc", t.min_ttc},
      {"location", {{"x", t.location.x}, {"y", t.location.y}}},
      {"type_pair", std::string(to_string(t.type_pair))},
      {"conflict_class", std::string(to_string(t.conflict_class))},
    });
  }
  return j.dump(2) + "\n";
}

}  // namespace mergesafe
