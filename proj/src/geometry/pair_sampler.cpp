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

#include "mergesafe/geometry/pair_sampler.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace mergesafe
{

namespace
{

constexpr double kMaxSpeed = 40.0;
constexpr double kMinDim = 2.0;
constexpr double kMaxDim = 18.0;

OrientedBox random_box(std::mt19937_64 & rng, const Vec2 & center)
{
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> dim(kMinDim, kMaxDim);
  const double length = dim(rng);
  const double width = std::uniform_real_distribution<double>(kMinDim, length)(rng);
  return {center, angle(rng), length, width};
}

Vec2 random_velocity(std::mt19937_64 & rng)
{
  const double speed = std::uniform_real_distribution<double>(0.0, kMaxSpeed)(rng);
  const double dir = std::uniform_real_distribution<double>(-std::numbers::pi, std::numbers::pi)(rng);
  return {speed * std::cos(dir), speed * std::sin(dir)};
}

double half_diagonal(const OrientedBox & b) { return 0.5 * std::hypot(b.length, b.width); }

OrientedBox axis_box(double cx, double cy, double heading, double length, double width)
{
  return {{cx, cy}, heading, length, width};
}

}  // namespace

std::uint64_t sweep_seed(std::uint64_t base, std::uint64_t i)
{
  // splitmix64 finaliser over the pair index.
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (i + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

PairState sample_pair(std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-50.0, 50.0);
  PairState p;
  p.box_a = random_box(rng, {coord(rng), coord(rng)});
  p.vel_a = random_velocity(rng);
  p.vel_b = random_velocity(rng);
  p.box_b = random_box(rng, {0.0, 0.0});
  if (seed % 2 == 1) {
    const Vec2 rel = p.vel_a - p.vel_b;
    const double speed = norm(rel);
    const double tau = std::uniform_real_distribution<double>(0.2, 9.5)(rng);
    const double reach = half_diagonal(p.box_a) + half_diagonal(p.box_b);
    const double miss = std::uniform_real_distribution<double>(-reach, reach)(rng);
    Vec2 perp{0.0, 0.0};
    if (speed > 0.0) perp = {-rel.y / speed, rel.x / speed};
    p.box_b.center = p.box_a.center + rel * tau + perp * miss;
  } else {
    p.box_b.center = {coord(rng), coord(rng)};
  }
  return p;
}

std::vector<NamedPair> grazing_corpus()
{
  const double pi = std::numbers::pi;
  std::vector<NamedPair> c;
  // Side faces flush at y = 1 while sliding together along x.
  c.push_back({"edge_slide", {axis_box(0, 0, 0, 4, 2), {5, 0}, axis_box(10, 2, 0, 4, 2), {0, 0}}});
  // Same lane, equal widths: corner paths run along the other box's side lines.
  c.push_back({"flush_rear_end", {axis_box(0, 0, 0, 4, 2), {20, 0}, axis_box(12, 0, 0, 4, 2), {15, 0}}});
  // Corner meets corner exactly and then penetrates.
  c.push_back({"corner_on_corner", {axis_box(0, 0, 0, 4, 2), {6, 1}, axis_box(10, 3, 0, 4, 2), {0, 0}}});
  // A diamond's top vertex slides along the bottom face of the other box.
  c.push_back(
    {"vertex_on_face", {axis_box(0, 0, 0, 4, 2), {0, 0}, axis_box(8, -1 - 2 * std::sqrt(0.5) * 1.5, pi / 4, 3, 3), {-6, 0}}});
  // Corner path touches a corner tangentially and never enters.
  c.push_back(
    {"corner_tangent", {axis_box(0, 0, 0, 4, 2), {4, 0}, axis_box(10, -1 - std::sqrt(2.0), pi / 4, 2, 2), {0, 0}}});
  // Lateral clearance of 1e-7 m: a near miss.
  c.push_back({"near_miss", {axis_box(0, 0, 0, 4, 2), {5, 0}, axis_box(10, 2 + 1e-7, 0, 4, 2), {0, 0}}});
  // Boxes touching at t = 0.
  c.push_back({"touching_at_start", {axis_box(0, 0, 0, 4, 2), {1, 0}, axis_box(4, 0, 0, 4, 2), {0, 0}}});
  // Right-angle approach onto the middle of a side.
  c.push_back({"t_bone", {axis_box(0, -10, pi / 2, 4, 2), {0, 10}, axis_box(0, 0, 0, 16, 2.5), {0, 0}}});
  // Slow closing over a short gap.
  c.push_back({"slow_closing", {axis_box(0, 0, 0, 4, 2), {1e-3, 0}, axis_box(4.005, 0, 0, 4, 2), {0, 0}}});
  // Contact right at the 10 s horizon.
  c.push_back({"horizon_edge", {axis_box(0, 0, 0, 4, 2), {1, 0}, axis_box(14, 0, 0, 4, 2), {0, 0}}});
  // Counter-rotated long boxes crossing at a shallow angle.
  c.push_back(
    {"shallow_crossing", {axis_box(0, 0, 0.05, 18, 2), {30, 0}, axis_box(40, 3, -0.05, 18, 2), {28, 0}}});
  // Opposite headings, offset by exactly the half widths.
  c.push_back({"head_on_offset", {axis_box(0, 0, 0, 4, 2), {10, 0}, axis_box(30, 2, pi, 4, 2), {-10, 0}}});
  return c;
}

}  // namespace mergesafe
