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

#ifndef MERGESAFE__CORE__INGEST_HPP_
#define MERGESAFE__CORE__INGEST_HPP_

#include "mergesafe/core/types.hpp"

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace mergesafe
{

/// Reads and validates a tracks CSV and a site JSON. Throws Error(Validation)
/// for schema or invariant violations and Error(Io) for unreadable files.
Dataset ingest_dataset(const std::filesystem::path & tracks_file, const std::filesystem::path & site_file);

SiteGeometry read_site_json(const std::filesystem::path & site_file);
SiteGeometry parse_site_json(const std::string & text);
std::string site_to_json(const SiteGeometry & site);

/// Parses the tracks CSV (header `frame,id,x,y,vx,vy,length,width[,lane_id]`)
/// against `site`. Errors name the 1-based line and the offending column.
Dataset parse_tracks_csv(std::istream & in, SiteGeometry site);

/// Inverse of parse_tracks_csv. Rows are ordered by (id, frame); doubles use the
/// shortest representation that round-trips exactly. The lane column is
/// written only when the lanes came from a file.
std::string tracks_to_csv(const Dataset & dataset);

/// Finalizes tracks into a validated dataset: sorts states and tracks,
/// classifies vehicles, fills lanes (unless `lanes_from_file`) and headings.
Dataset make_dataset(SiteGeometry site, std::vector<VehicleTrack> tracks, bool lanes_from_file);

/// Shortest round-trip decimal form.
std::string format_double(double value);

std::string read_text_file(const std::filesystem::path & path);

}  // namespace mergesafe

#endif  // MERGESAFE__CORE__INGEST_HPP_
