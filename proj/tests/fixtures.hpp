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

#ifndef MERGESAFE__TESTS__FIXTURES_HPP_
#define MERGESAFE__TESTS__FIXTURES_HPP_

#include "mergesafe/core/ingest.hpp"
#include "mergesafe/core/types.hpp"
#include "mergesafe/synth/scenario.hpp"

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <string>
#include <vector>

namespace mergesafe::testing
{

// Straight-line constant-velocity states over [first, last].
inline std::vector<KinematicState> straight_states(
  Frame first, Frame last, double x0, double y0, double vx, double vy, double fps = 25.0)
{
  std::vector<KinematicState> out;
  for (Frame f = first; f <= last; ++f) {
    const double t = static_cast<double>(f - first) / fps;
    out.push_back({f, x0 + vx * t, y0 + vy * t, vx, vy, 0.0, std::nullopt});
  }
  return out;
}

inline VehicleTrack make_track(VehicleId id, double length, double width, std::vector<KinematicState> states)
{
  VehicleTrack t;
  t.id = id;
  t.length = length;
  t.width = width;
  t.states = std::move(states);
  return t;
}

inline Dataset make_fixture(std::vector<VehicleTrack> tracks)
{
  return make_dataset(site_template(), std::move(tracks), false);
}

// Fresh empty directory under the system temporary directory.
inline std::filesystem::path scratch_dir(const std::string & tag)
{
  static std::atomic<int> counter{0};
  const auto dir = std::filesystem::temp_directory_path() /
                   ("mergesafe_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace mergesafe::testing

#endif  // MERGESAFE__TESTS__FIXTURES_HPP_
