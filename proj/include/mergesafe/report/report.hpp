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

#ifndef MERGESAFE__REPORT__REPORT_HPP_
#define MERGESAFE__REPORT__REPORT_HPP_

#include "mergesafe/conflict/conflict.hpp"
#include "mergesafe/core/types.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mergesafe
{

inline constexpr double kDefaultBinWidth = 1.0;
inline constexpr double kDefaultCellSize = 2.0;
inline constexpr double kMpsToKmh = 3.6;

/// Bins are [k * bin_width, (k + 1) * bin_width) for consecutive k covering
/// every sample.
struct Histogram
{
  double bin_width{kDefaultBinWidth};
  /// counts.size() + 1 edges, or none when empty.
  std::vector<double> bin_edges;
  std::vector<std::size_t> counts;
  std::size_t total{0};
  /// Unset when there are no samples.
  std::optional<double> mean;
  /// Sample standard deviation; unset below two samples.
  std::optional<double> sd;

  bool empty() const { return total == 0; }
};

struct FleetMix
{
  std::size_t cars{0};
  std::size_t trucks{0};
  /// 100 * trucks / vehicles rounded to one decimal; 0 for an empty fleet.
  double truck_percentage{0.0};
};

FleetMix fleet_mix(const Dataset & dataset);

Histogram speed_distribution(const Dataset & dataset, VehicleClass vclass, double bin_width);

using CellKey = std::pair<std::int64_t, std::int64_t>;

struct GridCell
{
  double sum{0.0};
  std::size_t count{0};
  /// Event grids only, ascending.
  std::vector<double> min_ttcs;

  double mean() const { return sum / static_cast<double>(count); }
};

/// Cell (col, row) covers [origin.x + col * cell_size, origin.x + (col + 1) * cell_size)
/// and likewise in y.
struct SpatialGrid
{
  double cell_size{kDefaultCellSize};
  Vec2 origin{0.0, 0.0};
  std::map<CellKey, GridCell> cells;

  CellKey key_of(const Vec2 & p) const;
  Vec2 center_of(const CellKey & key) const;
  std::size_t total_count() const;
};

/// Mean speed per cell over every frame of tracks of `vclass`.
SpatialGrid spatial_speed_map(const Dataset & dataset, VehicleClass vclass, double cell_size);

struct TypePairStats
{
  std::size_t event_count{0};
  std::optional<double> mean_ttc;
};

struct ConflictSummary
{
  /// Indexed by TypePair.
  std::array<TypePairStats, 4> per_pair{};
  std::size_t total_count{0};
  std::optional<double> overall_mean_ttc;
  std::string counting_convention;

  const TypePairStats & at(TypePair t) const { return per_pair[static_cast<std::size_t>(t)]; }
};

extern const char * const kCountingConvention;

/// Counts and mean min_ttc of lane-change events per type pair. Rear-end
/// events are ignored. Invariant under permutation of `events`.
ConflictSummary conflict_summary(std::span<const ConflictEvent> events);

/// One entry per event at its location; `sum` accumulates min_ttc so the cell
/// value is the mean min_ttc.
SpatialGrid conflict_position_map(
  std::span<const ConflictEvent> events, std::optional<TypePair> filter, double cell_size);

struct ReportConfig
{
  double bin_width{kDefaultBinWidth};
  double cell_size{kDefaultCellSize};
  std::optional<TypePair> filter;
  bool svg{false};

  /// Throws a validation error for non-positive sizes.
  void validate() const;
};

/// File name -> content, in name order.
using ReportBundle = std::map<std::string, std::string>;

/// summary.json, speed histogram and grid CSVs per class, the lane-change
/// conflict position grid and, when requested, SVG heatmaps.
ReportBundle render_report(
  const Dataset & dataset, std::span<const ConflictEvent> events, const ReportConfig & config);

std::string histogram_to_csv(const Histogram & h);
std::string grid_to_csv(const SpatialGrid & grid);

/// Writes every file into `dir` (created if needed). Files are staged under
/// temporary names and renamed at the end; on failure the staged and renamed
/// files are removed and an I/O error is thrown.
void write_bundle(const ReportBundle & bundle, const std::filesystem::path & dir);

}  // namespace mergesafe

#endif  // MERGESAFE__REPORT__REPORT_HPP_
