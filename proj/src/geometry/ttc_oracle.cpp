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

#include "mergesafe/geometry/ttc_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mergesafe
{

namespace
{

constexpr double kTouchTolerance = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Interval
{
  double lo;
  double hi;
  bool empty() const { return !(lo <= hi); }
};

// Vertices from the box's unit axes; deliberately not shared with corners().
std::array<Vec2, 4> vertices(const OrientedBox & box)
{
  const Vec2 u{std::cos(box.heading), std::sin(box.heading)};
  const Vec2 v{-u.y, u.x};
  const Vec2 hu = u * (0.5 * box.length);
  const Vec2 hv = v * (0.5 * box.width);
  return {box.center + hu + hv, box.center + hu - hv, box.center - hu - hv, box.center - hu + hv};
}

Interval project(const std::array<Vec2, 4> & pts, const Vec2 & axis)
{
  Interval r{kInf, -kInf};
  for (const auto & p : pts) {
    const double s = dot(p, axis);
    r.lo = std::min(r.lo, s);
    r.hi = std::max(r.hi, s);
  }
  return r;
}

// Times at which A, translating with rel_vel relative to B, overlaps B.
// The overlap set of two translating convex polygons is the intersection of
// the per-axis overlap sets over their edge normals.
Interval contact_window(const PairState & pair)
{
  const auto va = vertices(pair.box_a);
  const auto vb = vertices(pair.box_b);
  const Vec2 rel = pair.vel_a - pair.vel_b;
  const double ha = pair.box_a.heading;
  const double hb = pair.box_b.heading;
  const std::array<Vec2, 4> axes = {
    Vec2{std::cos(ha), std::sin(ha)}, Vec2{-std::sin(ha), std::cos(ha)},
    Vec2{std::cos(hb), std::sin(hb)}, Vec2{-std::sin(hb), std::cos(hb)}};

  Interval window{-kInf, kInf};
  for (const auto & n : axes) {
    const Interval a = project(va, n);
    const Interval b = project(vb, n);
    const double rate = dot(rel, n);
    Interval w;
    if (rate == 0.0) {
      const bool overlapping = a.lo <= b.hi + kTouchTolerance && a.hi >= b.lo - kTouchTolerance;
      w = overlapping ? Interval{-kInf, kInf} : Interval{kInf, -kInf};
    } else {
      const double enter = (b.lo - kTouchTolerance - a.hi) / rate;
      const double exit = (b.hi + kTouchTolerance - a.lo) / rate;
      w = rate > 0.0 ? Interval{enter, exit} : Interval{exit, enter};
    }
    window.lo = std::max(window.lo, w.lo);
    window.hi = std::min(window.hi, w.hi);
  }
  return window;
}

}  // namespace

std::optional<double> ttc_oracle(const PairState & pair, double dt, double horizon)
{
  if (!(dt > 0.0) || !(horizon > 0.0)) {
    throw std::invalid_argument("ttc_oracle: dt and horizon must be positive");
  }
  const Interval window = contact_window(pair);
  if (window.empty()) return std::nullopt;

  if (window.lo <= 0.0 && window.hi >= 0.0) return 0.0;
  const auto steps = static_cast<long long>(std::floor(horizon / dt + 1e-9));
  for (long long k = 1; k <= steps; ++k) {
    const double t0 = static_cast<double>(k - 1) * dt;
    const double t1 = static_cast<double>(k) * dt;
    if (std::max(t0, window.lo) <= std::min(t1, window.hi)) {
      return t1;
    }
  }
  return std::nullopt;
}

std::optional<double> first_contact_time(const PairState & pair, double horizon)
{
  const Interval window = contact_window(pair);
  const double lo = std::max(window.lo, 0.0);
  const double hi = std::min(window.hi, horizon);
  if (window.empty() || lo > hi) return std::nullopt;
  return lo;
}

}  // namespace mergesafe
