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

#include "mergesafe/core/ingest.hpp"

#include "mergesafe/core/error.hpp"
#include "mergesafe/core/lanes.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string_view>

namespace mergesafe
{

namespace
{

constexpr std::array<std::string_view, 8> kColumns = {"frame", "id",     "x",      "y",
                                                      "vx",    "vy",     "length", "width"};
constexpr std::string_view kLaneColumn = "lane_id";

std::string_view trim(std::string_view s)
{
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view line)
{
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(trim(line.substr(start)));
      break;
    }
    cells.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return cells;
}

[[noreturn]] void cell_error(std::size_t line, std::string_view column, const std::string & what)
{
  throw validation_error(
    "tracks line " + std::to_string(line) + ", column '" + std::string(column) + "': " + what);
}

double parse_real(std::string_view cell, std::size_t line, std::string_view column)
{
  double value = 0.0;
  const auto * end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), end, value);
  if (cell.empty() || ec != std::errc() || ptr != end) {
    cell_error(line, column, "malformed number '" + std::string(cell) + "'");
  }
  if (!std::isfinite(value)) {
    cell_error(line, column, "non-finite value '" + std::string(cell) + "'");
  }
  return value;
}

std::int64_t parse_integer(std::string_view cell, std::size_t line, std::string_view column)
{
  std::int64_t value = 0;
  const auto * end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), end, value);
  if (cell.empty() || ec != std::errc() || ptr != end) {
    cell_error(line, column, "malformed integer '" + std::string(cell) + "'");
  }
  return value;
}

Polyline parse_polyline(const nlohmann::json & j, const std::string & what)
{
  if (!j.is_array()) throw validation_error(what + " must be an array of [x, y] points");
  Polyline line;
  for (const auto & p : j) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      throw validation_error(what + " must be an array of [x, y] points");
    }
    line.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  return line;
}

nlohmann::json polyline_json(const Polyline & line)
{
  auto arr = nlohmann::json::array();
  for (const auto & p : line) arr.push_back({p.x, p.y});
  return arr;
}

}  // namespace

std::string format_double(double value)
{
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

std::string read_text_file(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SiteGeometry parse_site_json(const std::string & text)
{
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error & e) {
    throw validation_error(std::string("site JSON: ") + e.what());
  }
  if (!j.is_object()) throw validation_error("site JSON must be an object");

  SiteGeometry site;
  auto number = [&j](const char * key) {
    if (!j.contains(key) || !j[key].is_number()) {
      throw validation_error(std::string("site JSON: missing numeric '") + key + "'");
    }
    return j[key].get<double>();
  };
  site.frame_rate = number("frame_rate");
  site.segment_length = number("segment_length");
  if (!j.contains("lanes") || !j["lanes"].is_array() || j["lanes"].empty()) {
    throw validation_error("site JSON: missing lane geometry");
  }
  for (const auto & jl : j["lanes"]) {
    Lane lane;
    if (!jl.contains("lane_id") || !jl["lane_id"].is_number_integer()) {
      throw validation_error("site JSON: lane without integer lane_id");
    }
    lane.lane_id = jl["lane_id"].get<LaneId>();
    const std::string name = "site JSON lane " + std::to_string(lane.lane_id);
    const auto type = jl.contains("lane_type") && jl["lane_type"].is_string()
                        ? parse_lane_type(jl["lane_type"].get<std::string>())
                        : std::nullopt;
    if (!type) throw validation_error(name + ": lane_type must be mainline|on_ramp|acceleration");
    lane.lane_type = *type;
    for (const char * key : {"centerline", "left_boundary", "right_boundary"}) {
      if (!jl.contains(key)) throw validation_error(name + ": missing " + key);
    }
    lane.centerline = parse_polyline(jl["centerline"], name + " centerline");
    lane.left_boundary = parse_polyline(jl["left_boundary"], name + " left_boundary");
    lane.right_boundary = parse_polyline(jl["right_boundary"], name + " right_boundary");
    site.lanes.push_back(std::move(lane));
  }
  std::sort(site.lanes.begin(), site.lanes.end(), [](const Lane & a, const Lane & b) {
    return a.lane_id < b.lane_id;
  });
  validate_site(site);
  return site;
}

SiteGeometry read_site_json(const std::filesystem::path & site_file)
{
  return parse_site_json(read_text_file(site_file));
}

std::string site_to_json(const SiteGeometry & site)
{
  nlohmann::ordered_json j;
  j["frame_rate"] = site.frame_rate;
  j["segment_length"] = site.segment_length;
  auto lanes = nlohmann::ordered_json::array();
  for (const auto & lane : site.lanes) {
    nlohmann::ordered_json jl;
    jl["lane_id"] = lane.lane_id;
    jl["lane_type"] = std::string(to_string(lane.lane_type));
    jl["centerline"] = polyline_json(lane.centerline);
    jl["left_boundary"] = polyline_json(lane.left_boundary);
    jl["right_boundary"] = polyline_json(lane.right_boundary);
    lanes.push_back(std::move(jl));
  }
  j["lanes"] = std::move(lanes);
  return j.dump(2) + "\n";
}

Dataset make_dataset(SiteGeometry site, std::vector<VehicleTrack> tracks, bool lanes_from_file)
{
  validate_site(site);
  const BoundingBox bounds = bounding_box(site);

  std::sort(tracks.begin(), tracks.end(), [](const VehicleTrack & a, const VehicleTrack & b) {
    return a.id < b.id;
  });
  Dataset ds;
  ds.lanes_from_file = lanes_from_file;
  for (std::size_t i = 0; i < tracks.size(); ++i) {
    VehicleTrack & t = tracks[i];
    const std::string name = "vehicle " + std::to_string(t.id);
    if (i > 0 && tracks[i - 1].id == t.id) {
      throw validation_error("duplicate vehicle id " + std::to_string(t.id));
    }
    if (!(t.width > 0.0) || !(t.length >= t.width)) {
      throw validation_error(name + ": need length >= width > 0");
    }
    t.vclass = classify_vehicle(t.length);
    if (t.states.empty()) throw validation_error(name + ": track has no states");
    std::sort(t.states.begin(), t.states.end(), [](const KinematicState & a, const KinematicState & b) {
      return a.frame < b.frame;
    });
    std::size_t disagreements = 0;
    for (std::size_t k = 0; k < t.states.size(); ++k) {
      KinematicState & s = t.states[k];
      if (k > 0 && t.states[k - 1].frame == s.frame) {
        throw validation_error(
          name + ": duplicate (id, frame) at frame " + std::to_string(s.frame));
      }
      if (s.frame < 0) throw validation_error(name + ": negative frame");
      if (!std::isfinite(s.x) || !std::isfinite(s.y) || !std::isfinite(s.vx) ||
          !std::isfinite(s.vy))
      {
        throw validation_error(name + ": non-finite state at frame " + std::to_string(s.frame));
      }
      if (s.x < bounds.min.x - t.length || s.x > bounds.max.x + t.length ||
          s.y < bounds.min.y - t.length || s.y > bounds.max.y + t.length)
      {
        throw validation_error(
          name + ": position outside the site at frame " + std::to_string(s.frame));
      }
      const auto geometric = assign_lane(s.position(), site);
      if (lanes_from_file) {
        if (s.lane_id != geometric) ++disagreements;
      } else {
        s.lane_id = geometric;
      }
      s.heading = derive_heading(s.position(), s.velocity(), s.lane_id, site);
    }
    if (disagreements > 0) {
      ds.warnings.push_back(
        name + ": file lane disagrees with geometry at " + std::to_string(disagreements) +
        " frame(s)");
    }
  }
  ds.site = std::move(site);
  ds.tracks = std::move(tracks);
  return ds;
}

Dataset parse_tracks_csv(std::istream & in, SiteGeometry site)
{
  std::string line;
  std::size_t line_no = 0;
  bool has_lane = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto header = split(line);
    const bool base_ok =
      header.size() >= kColumns.size() && std::equal(kColumns.begin(), kColumns.end(), header.begin());
    has_lane = header.size() == kColumns.size() + 1 && header.back() == kLaneColumn;
    if (!base_ok || (header.size() != kColumns.size() && !has_lane)) {
      throw validation_error(
        "tracks line " + std::to_string(line_no) +
        ": header must be frame,id,x,y,vx,vy,length,width[,lane_id]");
    }
    break;
  }
  if (line_no == 0) throw validation_error("tracks file is empty (header required)");

  const std::size_t n_cols = kColumns.size() + (has_lane ? 1 : 0);
  std::map<VehicleId, VehicleTrack> by_id;
  std::map<VehicleId, std::set<Frame>> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    if (cells.size() != n_cols) {
      throw validation_error(
        "tracks line " + std::to_string(line_no) + ": expected " + std::to_string(n_cols) +
        " columns, found " + std::to_string(cells.size()));
    }
    KinematicState s;
    s.frame = parse_integer(cells[0], line_no, kColumns[0]);
    if (s.frame < 0) cell_error(line_no, kColumns[0], "frame must be non-negative");
    const VehicleId id = parse_integer(cells[1], line_no, kColumns[1]);
    s.x = parse_real(cells[2], line_no, kColumns[2]);
    s.y = parse_real(cells[3], line_no, kColumns[3]);
    s.vx = parse_real(cells[4], line_no, kColumns[4]);
    s.vy = parse_real(cells[5], line_no, kColumns[5]);
    const double length = parse_real(cells[6], line_no, kColumns[6]);
    const double width = parse_real(cells[7], line_no, kColumns[7]);
    if (!(length > 0.0)) cell_error(line_no, kColumns[6], "length must be positive");
    if (!(width > 0.0)) cell_error(line_no, kColumns[7], "width must be positive");
    if (has_lane && !cells[8].empty()) {
      s.lane_id = static_cast<LaneId>(parse_integer(cells[8], line_no, kLaneColumn));
    }
    if (!seen[id].insert(s.frame).second) {
      throw validation_error(
        "tracks line " + std::to_string(line_no) + ": duplicate (id, frame) = (" +
        std::to_string(id) + ", " + std::to_string(s.frame) + ")");
    }
    auto [it, inserted] = by_id.try_emplace(id);
    VehicleTrack & t = it->second;
    if (inserted) {
      t.id = id;
      t.length = length;
      t.width = width;
    } else if (t.length != length || t.width != width) {
      cell_error(line_no, kColumns[6], "vehicle dimensions change within a track");
    }
    t.states.push_back(s);
  }

  std::vector<VehicleTrack> tracks;
  tracks.reserve(by_id.size());
  for (auto & [id, t] : by_id) tracks.push_back(std::move(t));
  return make_dataset(std::move(site), std::move(tracks), has_lane);
}

Dataset ingest_dataset(const std::filesystem::path & tracks_file, const std::filesystem::path & site_file)
{
  SiteGeometry site = read_site_json(site_file);
  std::ifstream in(tracks_file, std::ios::binary);
  if (!in) throw io_error("cannot open " + tracks_file.string());
  return parse_tracks_csv(in, std::move(site));
}

std::string tracks_to_csv(const Dataset & dataset)
{
  std::string out = "frame,id,x,y,vx,vy,length,width";
  if (dataset.lanes_from_file) out += ",lane_id";
  out += '\n';
  for (const auto & t : dataset.tracks) {
    const std::string dims = format_double(t.length) + "," + format_double(t.width);
    for (const auto & s : t.states) {
      out += std::to_string(s.frame);
      out += ',';
      out += std::to_string(t.id);
      for (double v : {s.x, s.y, s.vx, s.vy}) {
        out += ',';
        out += format_double(v);
      }
      out += ',';
      out += dims;
      if (dataset.lanes_from_file) {
        out += ',';
        if (s.lane_id) out += std::to_string(*s.lane_id);
      }
      out += '\n';
    }
  }
  return out;
}

}  // namespace mergesafe
