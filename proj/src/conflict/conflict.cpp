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

#include "mergesafe/conflict/conflict.hpp"

#include "mergesafe/core/error.hpp"
#include "mergesafe/core/ingest.hpp"
#include "mergesafe/core/lanes.hpp"
#include "mergesafe/kernels/ttc_batch.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <thread>

namespace mergesafe
{

void ConflictConfig::validate() const
{
  if (!(ttc_threshold > 0.0) || !(ttc_threshold <= 10.0)) {
    throw validation_error("ttc_threshold must be in (0, 10]");
  }
  if (!(pruning_radius > 0.0) || !std::isfinite(pruning_radius)) {
    throw validation_error("pruning_radius must be positive");
  }
  if (!(merge_gap > 0.0) || !std::isfinite(merge_gap)) {
    throw validation_error("merge_gap must be positive");
  }
  if (min_duration < 1) throw validation_error("min_duration must be at least 1 frame");
}

std::string_view to_string(TypePair t)
{
  switch (t) {
    case TypePair::CarCar:
      return "CarCar";
    case TypePair::CarTruck:
      return "CarTruck";
    case TypePair::TruckCar:
      return "TruckCar";
    case TypePair::TruckTruck:
      return "TruckTruck";
  }
  return "CarCar";
}

std::string_view to_string(ConflictClass c)
{
  return c == ConflictClass::LaneChange ? "LaneChange" : "RearEnd";
}

std::optional<TypePair> parse_type_pair(std::string_view s)
{
  for (TypePair t : kAllTypePairs) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

std::optional<ConflictClass> parse_conflict_class(std::string_view s)
{
  if (s == "LaneChange") return ConflictClass::LaneChange;
  if (s == "RearEnd") return ConflictClass::RearEnd;
  return std::nullopt;
}

TypePair make_type_pair(VehicleClass lead, VehicleClass lag)
{
  if (lead == VehicleClass::Car) {
    return lag == VehicleClass::Car ? TypePair::CarCar : TypePair::CarTruck;
  }
  return lag == VehicleClass::Car ? TypePair::TruckCar : TypePair::TruckTruck;
}

namespace
{

bool within_radius(const KinematicState & a, const KinematicState & b, double radius)
{
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy <= radius * radius;
}

BoxFrame frame_of(const VehicleTrack & track, const KinematicState & s)
{
  return make_frame(OrientedBox{s.position(), s.heading, track.length, track.width});
}

}  // namespace

std::vector<VehiclePair> candidate_pairs(const Dataset & dataset, Frame frame, const ConflictConfig & config)
{
  std::vector<std::pair<VehicleId, const KinematicState *>> present;
  for (const auto & t : dataset.tracks) {
    if (const auto * s = t.state_at(frame)) present.emplace_back(t.id, s);
  }
  std::vector<VehiclePair> out;
  for (std::size_t i = 0; i < present.size(); ++i) {
    for (std::size_t j = i + 1; j < present.size(); ++j) {
      if (within_radius(*present[i].second, *present[j].second, config.pruning_radius)) {
        out.push_back(VehiclePair::of(present[i].first, present[j].first));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<TtcSample> ttc_series(
  const Dataset & dataset, VehiclePair pair, const ConflictConfig & config, kernels::Isa isa)
{
  const VehicleTrack * ta = dataset.find_track(pair.a);
  const VehicleTrack * tb = dataset.find_track(pair.b);
  if (ta == nullptr || tb == nullptr) {
    throw validation_error(
      "ttc_series: unknown vehicle in pair (" + std::to_string(pair.a) + ", " +
      std::to_string(pair.b) + ")");
  }

  std::vector<Frame> frames;
  kernels::TtcBatch batch;
  auto ia = ta->states.begin();
  auto ib = tb->states.begin();
  while (ia != ta->states.end() && ib != tb->states.end()) {
    if (ia->frame < ib->frame) {
      ++ia;
    } else if (ib->frame < ia->frame) {
      ++ib;
    } else {
      if (within_radius(*ia, *ib, config.pruning_radius)) {
        frames.push_back(ia->frame);
        batch.push_back(frame_of(*ta, *ia), ia->velocity(), frame_of(*tb, *ib), ib->velocity());
      }
      ++ia;
      ++ib;
    }
  }

  kernels::TtcBatchResult result;
  kernels::ttc_batch(batch, result, isa);
  std::vector<TtcSample> out;
  out.reserve(frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const TtcResult r = result.at(i);
    out.push_back({frames[i], pair, r.ttc, r.collision_distance, r.witness, r.witness_corner});
  }
  return out;
}

std::vector<ConflictEvent> extract_events(
  std::span<const TtcSample> series, const ConflictConfig & config, double frame_rate)
{
  struct Run
  {
    std::size_t first;
    std::size_t last;
  };
  std::vector<Run> runs;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto & s = series[i];
    if (!s.ttc || !(*s.ttc <= config.ttc_threshold)) continue;
    if (!runs.empty() && runs.back().last + 1 == i && series[i - 1].frame + 1 == s.frame) {
      runs.back().last = i;
    } else {
      runs.push_back({i, i});
    }
  }

  std::vector<Run> merged;
  for (const Run & r : runs) {
    if (!merged.empty()) {
      const double gap_s =
        static_cast<double>(series[r.first].frame - series[merged.back().last].frame) / frame_rate;
      if (gap_s <= config.merge_gap) {
        merged.back().last = r.last;
        continue;
      }
    }
    merged.push_back(r);
  }

  std::vector<ConflictEvent> events;
  for (const Run & r : merged) {
    ConflictEvent e;
    e.pair = series[r.first].pair;
    e.start_frame = series[r.first].frame;
    e.end_frame = series[r.last].frame;
    if (e.end_frame - e.start_frame + 1 < config.min_duration) continue;
    bool found = false;
    for (std::size_t i = r.first; i <= r.last; ++i) {
      const auto & s = series[i];
      if (!s.ttc || !(*s.ttc <= config.ttc_threshold)) continue;
      if (!found || *s.ttc < e.min_ttc) {
        e.min_ttc = *s.ttc;
        e.min_ttc_frame = s.frame;
        found = true;
      }
    }
    events.push_back(e);
  }
  return events;
}

namespace
{

bool overlaps(const LaneChangeEpisode & ep, Frame start, Frame end)
{
  return ep.start_frame <= end && start <= ep.end_frame;
}

ConflictEvent classify_with(
  ConflictEvent event, const Dataset & dataset, const std::vector<LaneChangeEpisode> & episodes_a,
  const std::vector<LaneChangeEpisode> & episodes_b)
{
  const VehicleTrack * ta = dataset.find_track(event.pair.a);
  const VehicleTrack * tb = dataset.find_track(event.pair.b);
  if (ta == nullptr || tb == nullptr) {
    throw validation_error("classify_event: unknown vehicle in event pair");
  }
  const auto * a_min = ta->state_at(event.min_ttc_frame);
  const auto * b_min = tb->state_at(event.min_ttc_frame);
  const auto * a_start = ta->state_at(event.start_frame);
  const auto * b_start = tb->state_at(event.start_frame);
  if (!a_min || !b_min || !a_start || !b_start) {
    throw validation_error("classify_event: event frames outside the co-presence of its pair");
  }
  const SiteGeometry & site = dataset.site;

  event.location = {(a_min->x + b_min->x) * 0.5, (a_min->y + b_min->y) * 0.5};

  const double pos_a = longitudinal_position(a_start->position(), lane_of(*a_start, site), site);
  const double pos_b = longitudinal_position(b_start->position(), lane_of(*b_start, site), site);
  const bool a_leads = pos_a > pos_b || (pos_a == pos_b && ta->id < tb->id);
  const VehicleTrack & lead = a_leads ? *ta : *tb;
  const VehicleTrack & lag = a_leads ? *tb : *ta;
  event.lead_id = lead.id;
  event.lag_id = lag.id;
  event.type_pair = make_type_pair(lead.vclass, lag.vclass);

  bool changing = false;
  for (const auto * eps : {&episodes_a, &episodes_b}) {
    for (const auto & ep : *eps) {
      if (overlaps(ep, event.start_frame, event.end_frame)) changing = true;
    }
  }
  const bool different_lanes = lane_of(*a_min, site) != lane_of(*b_min, site);
  event.conflict_class =
    (changing || different_lanes) ? ConflictClass::LaneChange : ConflictClass::RearEnd;
  event.classified = true;
  return event;
}

int resolve_window(int window_frames, const SiteGeometry & site)
{
  return window_frames >= 0 ? window_frames : marking_window_frames(site.frame_rate);
}

}  // namespace

ConflictEvent classify_event(ConflictEvent event, const Dataset & dataset, int window_frames)
{
  const int w = resolve_window(window_frames, dataset.site);
  const VehicleTrack * ta = dataset.find_track(event.pair.a);
  const VehicleTrack * tb = dataset.find_track(event.pair.b);
  if (ta == nullptr || tb == nullptr) {
    throw validation_error("classify_event: unknown vehicle in event pair");
  }
  return classify_with(
    event, dataset, detect_lane_changes(*ta, dataset.site, w), detect_lane_changes(*tb, dataset.site, w));
}

std::vector<ConflictEvent> detect_conflicts(
  const Dataset & dataset, const ConflictConfig & config, const DetectOptions & options)
{
  config.validate();
  const int w = resolve_window(options.window_frames, dataset.site);

  // Pairs whose frame spans intersect, in a canonical order.
  std::vector<const VehicleTrack *> by_start;
  for (const auto & t : dataset.tracks) {
    if (!t.states.empty()) by_start.push_back(&t);
  }
  std::sort(by_start.begin(), by_start.end(), [](const VehicleTrack * x, const VehicleTrack * y) {
    return x->first_frame() != y->first_frame() ? x->first_frame() < y->first_frame() : x->id < y->id;
  });
  std::vector<VehiclePair> pairs;
  for (std::size_t i = 0; i < by_start.size(); ++i) {
    for (std::size_t j = i + 1; j < by_start.size(); ++j) {
      if (by_start[j]->first_frame() > by_start[i]->last_frame()) break;
      pairs.push_back(VehiclePair::of(by_start[i]->id, by_start[j]->id));
    }
  }
  std::sort(pairs.begin(), pairs.end());

  std::map<VehicleId, std::vector<LaneChangeEpisode>> episodes;
  for (const auto & t : dataset.tracks) episodes[t.id] = detect_lane_changes(t, dataset.site, w);

  std::vector<std::vector<ConflictEvent>> per_pair(pairs.size());
  auto work = [&](std::size_t worker, std::size_t n_workers) {
    for (std::size_t k = worker; k < pairs.size(); k += n_workers) {
      const auto series = ttc_series(dataset, pairs[k], config, options.isa);
      auto events = extract_events(series, config, dataset.site.frame_rate);
      for (auto & e : events) {
        e = classify_with(e, dataset, episodes.at(pairs[k].a), episodes.at(pairs[k].b));
      }
      per_pair[k] = std::move(events);
    }
  };
  const std::size_t n_workers = std::max<std::size_t>(1, std::min<std::size_t>(options.threads, pairs.size()));
  if (n_workers <= 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w_id = 0; w_id < n_workers; ++w_id) pool.emplace_back(work, w_id, n_workers);
  }

  std::vector<ConflictEvent> out;
  for (auto & events : per_pair) {
    for (auto & e : events) out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end(), [](const ConflictEvent & x, const ConflictEvent & y) {
    if (x.start_frame != y.start_frame) return x.start_frame < y.start_frame;
    return x.pair < y.pair;
  });
  return out;
}

std::string conflicts_to_csv(std::span<const ConflictEvent> events)
{
  std::string out =
    "pair_a,pair_b,start_frame,end_frame,min_ttc,min_ttc_frame,x,y,lead_id,lag_id,type_pair,"
    "conflict_class\n";
  for (const auto & e : events) {
    out += std::to_string(e.pair.a) + ',' + std::to_string(e.pair.b) + ',' +
           std::to_string(e.start_frame) + ',' + std::to_string(e.end_frame) + ',' +
           format_double(e.min_ttc) + ',' + std::to_string(e.min_ttc_frame) + ',' +
           format_double(e.location.x) + ',' + format_double(e.location.y) + ',' +
           std::to_string(e.lead_id) + ',' + std::to_string(e.lag_id) + ',' +
           std::string(to_string(e.type_pair)) + ',' + std::string(to_string(e.conflict_class)) +
           '\n';
  }
  return out;
}

namespace
{

template <typename T>
T parse_cell(std::string_view cell, std::size_t line, const char * column)
{
  T value{};
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw validation_error(
      "conflicts line " + std::to_string(line) + ", column '" + column + "': malformed value '" +
      std::string(cell) + "'");
  }
  return value;
}

}  // namespace

std::vector<ConflictEvent> parse_conflicts_csv(std::istream & in)
{
  static constexpr const char * kHeader =
    "pair_a,pair_b,start_frame,end_frame,min_ttc,min_ttc_frame,x,y,lead_id,lag_id,type_pair,"
    "conflict_class";
  static constexpr const char * kNames[] = {
    "pair_a", "pair_b", "start_frame", "end_frame", "min_ttc", "min_ttc_frame",
    "x",      "y",      "lead_id",     "lag_id",    "type_pair", "conflict_class"};
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw validation_error("conflicts file is empty (header required)");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) throw validation_error("conflicts line 1: unexpected header");

  std::vector<ConflictEvent> out;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string_view> cells;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      cells.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (cells.size() != 12) {
      throw validation_error("conflicts line " + std::to_string(line_no) + ": expected 12 columns");
    }
    ConflictEvent e;
    e.pair.a = parse_cell<VehicleId>(cells[0], line_no, kNames[0]);
    e.pair.b = parse_cell<VehicleId>(cells[1], line_no, kNames[1]);
    e.start_frame = parse_cell<Frame>(cells[2], line_no, kNames[2]);
    e.end_frame = parse_cell<Frame>(cells[3], line_no, kNames[3]);
    e.min_ttc = parse_cell<double>(cells[4], line_no, kNames[4]);
    e.min_ttc_frame = parse_cell<Frame>(cells[5], line_no, kNames[5]);
    e.location.x = parse_cell<double>(cells[6], line_no, kNames[6]);
    e.location.y = parse_cell<double>(cells[7], line_no, kNames[7]);
    e.lead_id = parse_cell<VehicleId>(cells[8], line_no, kNames[8]);
    e.lag_id = parse_cell<VehicleId>(cells[9], line_no, kNames[9]);
    const auto tp = parse_type_pair(cells[10]);
    const auto cc = parse_conflict_class(cells[11]);
    if (!tp || !cc) {
      throw validation_error(
        "conflicts line " + std::to_string(line_no) + ": unknown type_pair or conflict_class");
    }
    e.type_pair = *tp;
    e.conflict_class = *cc;
    e.classified = true;
    out.push_back(e);
  }
  return out;
}

}  // namespace mergesafe
