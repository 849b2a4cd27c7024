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

#include "mergesafe/report/report.hpp"

#include "mergesafe/core/error.hpp"
#include "mergesafe/core/ingest.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <system_error>

namespace mergesafe
{

namespace
{

std::int64_t floor_index(double v) { return static_cast<std::int64_t>(std::floor(v)); }

std::optional<double> sample_sd(std::span<const double> xs, double mean)
{
  if (xs.size() < 2) return std::nullopt;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

FleetMix fleet_mix(const Dataset & dataset)
{
  FleetMix mix;
  for (const auto & t : dataset.tracks) (t.vclass == VehicleClass::Truck ? mix.trucks : mix.cars)++;
  const std::size_t n = mix.cars + mix.trucks;
  if (n > 0) {
    mix.truck_percentage =
      std::round(1000.0 * static_cast<double>(mix.trucks) / static_cast<double>(n)) / 10.0;
  }
  return mix;
}

Histogram speed_distribution(const Dataset & dataset, VehicleClass vclass, double bin_width)
{
  if (!(bin_width > 0.0) || !std::isfinite(bin_width)) throw validation_error("bin_width must be positive");
  Histogram h;
  h.bin_width = bin_width;
  std::vector<double> speeds;
  for (const auto & t : dataset.tracks) {
    if (t.vclass != vclass) continue;
    for (const auto & s : t.states) speeds.push_back(s.speed());
  }
  if (speeds.empty()) return h;

  std::int64_t lo = floor_index(speeds.front() / bin_width);
  std::int64_t hi = lo;
  double sum = 0.0;
  for (double v : speeds) {
    const std::int64_t k = floor_index(v / bin_width);
    lo = std::min(lo, k);
    hi = std::max(hi, k);
    sum += v;
  }
  h.counts.assign(static_cast<std::size_t>(hi - lo + 1), 0);
  for (double v : speeds) ++h.counts[static_cast<std::size_t>(floor_index(v / bin_width) - lo)];
  for (std::int64_t k = lo; k <= hi + 1; ++k) h.bin_edges.push_back(static_cast<double>(k) * bin_width);
  h.total = speeds.size();
  h.mean = sum / static_cast<double>(speeds.size());
  h.sd = sample_sd(speeds, *h.mean);
  return h;
}

CellKey SpatialGrid::key_of(const Vec2 & p) const
{
  return {floor_index((p.x - origin.x) / cell_size), floor_index((p.y - origin.y) / cell_size)};
}

Vec2 SpatialGrid::center_of(const CellKey & key) const
{
  return {
    origin.x + (static_cast<double>(key.first) + 0.5) * cell_size,
    origin.y + (static_cast<double>(key.second) + 0.5) * cell_size};
}

std::size_t SpatialGrid::total_count() const
{
  std::size_t n = 0;
  for (const auto & [key, cell] : cells) n += cell.count;
  return n;
}

SpatialGrid spatial_speed_map(const Dataset & dataset, VehicleClass vclass, double cell_size)
{
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) throw validation_error("cell_size must be positive");
  SpatialGrid grid;
  grid.cell_size = cell_size;
  for (const auto & t : dataset.tracks) {
    if (t.vclass != vclass) continue;
    for (const auto & s : t.states) {
      GridCell & cell = grid.cells[grid.key_of(s.position())];
      cell.sum += s.speed();
      ++cell.count;
    }
  }
  return grid;
}

const char * const kCountingConvention =
  "one count per lane-change conflict event (a maximal run of frames with TTC at or below the "
  "threshold, after gap merging); mean_ttc averages the per-event minimum TTC";

ConflictSummary conflict_summary(std::span<const ConflictEvent> events)
{
  ConflictSummary summary;
  summary.counting_convention = kCountingConvention;
  std::array<std::vector<double>, 4> ttcs;
  for (const auto & e : events) {
    if (e.conflict_class != ConflictClass::LaneChange) continue;
    ttcs[static_cast<std::size_t>(e.type_pair)].push_back(e.min_ttc);
  }
  std::vector<double> all;
  for (std::size_t i = 0; i < ttcs.size(); ++i) {
    // Sorting fixes the summation order.
    std::sort(ttcs[i].begin(), ttcs[i].end());
    summary.per_pair[i].event_count = ttcs[i].size();
    if (!ttcs[i].empty()) {
      double sum = 0.0;
      for (double v : ttcs[i]) sum += v;
      summary.per_pair[i].mean_ttc = sum / static_cast<double>(ttcs[i].size());
    }
    all.insert(all.end(), ttcs[i].begin(), ttcs[i].end());
  }
  std::sort(all.begin(), all.end());
  summary.total_count = all.size();
  if (!all.empty()) {
    double sum = 0.0;
    for (double v : all) sum += v;
    summary.overall_mean_ttc = sum / static_cast<double>(all.size());
  }
  return summary;
}

SpatialGrid conflict_position_map(
  std::span<const ConflictEvent> events, std::optional<TypePair> filter, double cell_size)
{
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) throw validation_error("cell_size must be positive");
  SpatialGrid grid;
  grid.cell_size = cell_size;
  for (const auto & e : events) {
    if (filter && e.type_pair != *filter) continue;
    grid.cells[grid.key_of(e.location)].min_ttcs.push_back(e.min_ttc);
  }
  for (auto & [key, cell] : grid.cells) {
    std::sort(cell.min_ttcs.begin(), cell.min_ttcs.end());
    cell.count = cell.min_ttcs.size();
    for (double v : cell.min_ttcs) cell.sum += v;
  }
  return grid;
}

void ReportConfig::validate() const
{
  if (!(bin_width > 0.0) || !std::isfinite(bin_width)) throw validation_error("bin_width must be positive");
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) throw validation_error("cell_size must be positive");
}

std::string histogram_to_csv(const Histogram & h)
{
  std::string out = "bin_start,bin_end,count\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    out += format_double(h.bin_edges[i]) + ',' + format_double(h.bin_edges[i + 1]) + ',' +
           std::to_string(h.counts[i]) + '\n';
  }
  return out;
}

std::string grid_to_csv(const SpatialGrid & grid)
{
  std::string out = "col,row,x_center,y_center,value,count\n";
  for (const auto & [key, cell] : grid.cells) {
    const Vec2 c = grid.center_of(key);
    out += std::to_string(key.first) + ',' + std::to_string(key.second) + ',' + format_double(c.x) +
           ',' + format_double(c.y) + ',' + format_double(cell.mean()) + ',' +
           std::to_string(cell.count) + '\n';
  }
  return out;
}

namespace
{

using nlohmann::ordered_json;

ordered_json optional_number(const std::optional<double> & v)
{
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json optional_kmh(const std::optional<double> & v)
{
  return v ? ordered_json(*v * kMpsToKmh) : ordered_json(nullptr);
}

ordered_json speed_section(const Histogram & h)
{
  ordered_json j;
  j["samples"] = h.total;
  j["mean_mps"] = optional_number(h.mean);
  j["sd_mps"] = optional_number(h.sd);
  j["mean_kmh"] = optional_kmh(h.mean);
  j["sd_kmh"] = optional_kmh(h.sd);
  j["bin_width_mps"] = h.bin_width;
  return j;
}

// Linear ramp from pale yellow (t = 0) to dark red (t = 1).
std::string ramp_color(double t)
{
  t = std::clamp(t, 0.0, 1.0);
  const int r = static_cast<int>(std::lround(255.0 - 115.0 * t));
  const int g = static_cast<int>(std::lround(240.0 - 240.0 * t));
  const int b = static_cast<int>(std::lround(160.0 - 160.0 * t));
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
  return buf;
}

std::string svg_heatmap(const SpatialGrid & grid, const BoundingBox & box, bool severity)
{
  constexpr double kScale = 4.0;  // pixels per metre
  const double width = (box.max.x - box.min.x) * kScale;
  const double height = (box.max.y - box.min.y) * kScale;

  double lo = 0.0;
  double hi = 1.0;
  std::vector<double> quantile_edges;
  if (severity) {
    // Quartile edges of min_ttc over every event in the grid.
    std::vector<double> all;
    for (const auto & [key, cell] : grid.cells) all.insert(all.end(), cell.min_ttcs.begin(), cell.min_ttcs.end());
    std::sort(all.begin(), all.end());
    for (int q = 1; q < 4; ++q) {
      if (!all.empty()) quantile_edges.push_back(all[(all.size() - 1) * static_cast<std::size_t>(q) / 4]);
    }
  } else if (!grid.cells.empty()) {
    lo = grid.cells.begin()->second.mean();
    hi = lo;
    for (const auto & [key, cell] : grid.cells) {
      lo = std::min(lo, cell.mean());
      hi = std::max(hi, cell.mean());
    }
  }

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + format_double(width) +
                    "\" height=\"" + format_double(height) + "\">\n";
  for (const auto & [key, cell] : grid.cells) {
    double t = 0.0;
    if (severity) {
      // Lower TTC is more severe and darker.
      const double worst = cell.min_ttcs.front();
      std::size_t above = 0;
      for (double e : quantile_edges) above += worst > e ? 1 : 0;
      t = 1.0 - static_cast<double>(above) / 3.0;
    } else if (hi > lo) {
      t = (cell.mean() - lo) / (hi - lo);
    }
    const double x0 = grid.origin.x + static_cast<double>(key.first) * grid.cell_size;
    const double y1 = grid.origin.y + static_cast<double>(key.second + 1) * grid.cell_size;
    out += "<rect x=\"" + format_double((x0 - box.min.x) * kScale) + "\" y=\"" +
           format_double((box.max.y - y1) * kScale) + "\" width=\"" +
           format_double(grid.cell_size * kScale) + "\" height=\"" +
           format_double(grid.cell_size * kScale) + "\" fill=\"" + ramp_color(t) + "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace

ReportBundle render_report(
  const Dataset & dataset, std::span<const ConflictEvent> events, const ReportConfig & config)
{
  config.validate();
  ReportBundle bundle;

  const FleetMix mix = fleet_mix(dataset);

  const Histogram car_hist = speed_distribution(dataset, VehicleClass::Car, config.bin_width);
  const Histogram truck_hist = speed_distribution(dataset, VehicleClass::Truck, config.bin_width);
  const SpatialGrid car_grid = spatial_speed_map(dataset, VehicleClass::Car, config.cell_size);
  const SpatialGrid truck_grid = spatial_speed_map(dataset, VehicleClass::Truck, config.cell_size);

  std::vector<ConflictEvent> lane_change;
  std::size_t rear_end = 0;
  for (const auto & e : events) {
    if (e.conflict_class == ConflictClass::LaneChange) {
      lane_change.push_back(e);
    } else {
      ++rear_end;
    }
  }
  const ConflictSummary summary = conflict_summary(events);
  const SpatialGrid conflict_grid = conflict_position_map(lane_change, config.filter, config.cell_size);

  ordered_json j;
  j["fleet"] = {
    {"vehicles", mix.cars + mix.trucks},
    {"cars", mix.cars},
    {"trucks", mix.trucks},
    {"truck_percentage", mix.truck_percentage}};
  j["speed"] = {{"car", speed_section(car_hist)}, {"truck", speed_section(truck_hist)}};
  ordered_json per_pair = ordered_json::object();
  for (TypePair t : kAllTypePairs) {
    const auto & s = summary.at(t);
    per_pair[std::string(to_string(t))] = {
      {"event_count", s.event_count}, {"mean_ttc", optional_number(s.mean_ttc)}};
  }
  j["conflicts"] = {
    {"counting_convention", summary.counting_convention},
    {"total_events", events.size()},
    {"lane_change_events", summary.total_count},
    {"rear_end_events", rear_end},
    {"mean_ttc", optional_number(summary.overall_mean_ttc)},
    {"per_type_pair", per_pair}};
  j["config"] = {
    {"bin_width_mps", config.bin_width},
    {"cell_size_m", config.cell_size},
    {"filter_type_pair",
     config.filter ? ordered_json(std::string(to_string(*config.filter))) : ordered_json(nullptr)}};

  bundle["summary.json"] = j.dump(2) + "\n";
  bundle["speed_hist_car.csv"] = histogram_to_csv(car_hist);
  bundle["speed_hist_truck.csv"] = histogram_to_csv(truck_hist);
  bundle["speed_grid_car.csv"] = grid_to_csv(car_grid);
  bundle["speed_grid_truck.csv"] = grid_to_csv(truck_grid);
  bundle["conflict_grid.csv"] = grid_to_csv(conflict_grid);
  if (config.svg) {
    const BoundingBox box = bounding_box(dataset.site);
    bundle["speed_map_car.svg"] = svg_heatmap(car_grid, box, false);
    bundle["speed_map_truck.svg"] = svg_heatmap(truck_grid, box, false);
    bundle["conflict_map.svg"] = svg_heatmap(conflict_grid, box, true);
  }
  return bundle;
}

void write_bundle(const ReportBundle & bundle, const std::filesystem::path & dir)
{
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw io_error("cannot create output directory '" + dir.string() + "'");
  }
  std::vector<fs::path> staged;
  std::vector<fs::path> placed;
  auto cleanup = [&]() {
    std::error_code ignore;
    for (const auto & p : staged) fs::remove(p, ignore);
    for (const auto & p : placed) fs::remove(p, ignore);
  };
  for (const auto & [name, content] : bundle) {
    const fs::path tmp = dir / ("." + name + ".tmp");
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (out) staged.push_back(tmp);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) {
      cleanup();
      throw io_error("cannot write '" + (dir / name).string() + "'");
    }
  }
  for (const auto & [name, content] : bundle) {
    const fs::path tmp = dir / ("." + name + ".tmp");
    fs::rename(tmp, dir / name, ec);
    if (ec) {
      cleanup();
      throw io_error("cannot write '" + (dir / name).string() + "'");
    }
    std::erase(staged, tmp);
    placed.push_back(dir / name);
  }
}

}  // namespace mergesafe
