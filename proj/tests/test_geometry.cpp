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

#include "mergesafe/geometry/oriented_box.hpp"
#include "mergesafe/geometry/pair_sampler.hpp"
#include "mergesafe/geometry/ttc.hpp"
#include "mergesafe/geometry/ttc_oracle.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace mergesafe
{
namespace
{

OrientedBox box(double cx, double cy, double heading = 0.0, double length = 4.0, double width = 2.0)
{
  return {{cx, cy}, heading, length, width};
}

void expect_vec(const Vec2 & got, double x, double y)
{
  EXPECT_NEAR(got.x, x, 1e-12);
  EXPECT_NEAR(got.y, y, 1e-12);
}

// Independent reference: exact earliest-contact time of two translating
// rectangles. On each edge normal the projected separation is linear in t,
// so every axis admits a closed time window; the boxes touch exactly on the
// intersection of the four windows.
std::optional<double> contact_time(const PairState & p, double horizon)
{
  const OrientedBox * boxes[2] = {&p.box_a, &p.box_b};
  auto radius = [](const OrientedBox & b, const Vec2 & n) {
    const Vec2 u{std::cos(b.heading), std::sin(b.heading)};
    const Vec2 v{-u.y, u.x};
    return 0.5 * b.length * std::abs(dot(u, n)) + 0.5 * b.width * std::abs(dot(v, n));
  };
  double lo = 0.0;
  double hi = horizon;
  for (const OrientedBox * b : boxes) {
    const Vec2 u{std::cos(b->heading), std::sin(b->heading)};
    for (const Vec2 & n : {u, Vec2{-u.y, u.x}}) {
      const double r = radius(p.box_a, n) + radius(p.box_b, n) + 1e-9;
      const double s0 = dot(p.box_b.center - p.box_a.center, n);
      const double ds = dot(p.vel_b - p.vel_a, n);
      if (ds == 0.0) {
        if (std::abs(s0) > r) return std::nullopt;
        continue;
      }
      double t1 = (-r - s0) / ds;
      double t2 = (r - s0) / ds;
      if (t1 > t2) std::swap(t1, t2);
      lo = std::max(lo, t1);
      hi = std::min(hi, t2);
    }
  }
  if (lo > hi) return std::nullopt;
  return lo;
}

PairState pair_of(const OrientedBox & a, Vec2 va, const OrientedBox & b, Vec2 vb)
{
  return {a, va, b, vb};
}

TEST(Corners, AxisAlignedRotatedTranslated)
{
  const auto c0 = corners(box(0, 0));
  expect_vec(c0[0], 2, 1);
  expect_vec(c0[1], 2, -1);
  expect_vec(c0[2], -2, -1);
  expect_vec(c0[3], -2, 1);

  const auto c1 = corners(box(0, 0, std::numbers::pi / 2));
  expect_vec(c1[0], -1, 2);
  expect_vec(c1[1], 1, 2);
  expect_vec(c1[2], 1, -2);
  expect_vec(c1[3], -1, -2);

  const auto c2 = corners(box(10, 5));
  for (int i = 0; i < 4; ++i) expect_vec(c2[i], c0[i].x + 10, c0[i].y + 5);
}

TEST(Corners, FrameAndBoxFormsAgree)
{
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const OrientedBox b = box(10 * u(rng), 10 * u(rng), u(rng), 3 + std::abs(u(rng)), 1 + std::abs(u(rng)) / 2);
    const auto c = corners(b);
    const auto f = corners(make_frame(b));
    for (int k = 0; k < 4; ++k) EXPECT_EQ(c[k], f[k]);
  }
}

TEST(RaySegment, Examples)
{
  const auto hit = ray_segment_intersection({0, 0}, {1, 0}, {5, -1}, {5, 1});
  ASSERT_TRUE(hit);
  expect_vec(hit->point, 5, 0);
  EXPECT_DOUBLE_EQ(hit->t, 5.0);
  EXPECT_FALSE(ray_segment_intersection({0, 0}, {0, 1}, {5, -1}, {5, 1}));
  EXPECT_FALSE(ray_segment_intersection({0, 0}, {1, 0}, {5, 1}, {5, 3}));
  EXPECT_FALSE(ray_segment_intersection({0, 0}, {-1, 0}, {5, -1}, {5, 1}));
}

TEST(RaySegment, CollinearIsNoneAndEndpointsHit)
{
  EXPECT_FALSE(ray_segment_intersection({0, 0}, {1, 0}, {3, 0}, {6, 0}));
  const auto end = ray_segment_intersection({0, 0}, {1, 0}, {5, 0}, {5, 2});
  ASSERT_TRUE(end);
  EXPECT_DOUBLE_EQ(end->t, 5.0);
}

TEST(DirectionalDistance, Examples)
{
  const auto d = directional_collision_distance(box(0, 0), box(14, 0), {5, 0});
  ASSERT_TRUE(d);
  EXPECT_DOUBLE_EQ(d->distance, 10.0);
  EXPECT_FALSE(directional_collision_distance(box(0, 0), box(14, 0), {-5, 0}));

  // Oblique case: the stepping reference fixes the first-overlap time t and
  // the distance is |rel| * t.
  const Vec2 rel{2, 1};
  const auto oblique = directional_collision_distance(box(0, 0), box(10, 2.5), rel);
  ASSERT_TRUE(oblique);
  const auto t = ttc_oracle(pair_of(box(0, 0), rel, box(10, 2.5), {0, 0}), 1e-3, 10.0);
  ASSERT_TRUE(t);
  EXPECT_NEAR(oblique->distance, norm(rel) * *t, norm(rel) * 2e-3);
  EXPECT_NEAR(oblique->distance, 3.0 * std::sqrt(5.0), 1e-12);
  EXPECT_EQ(oblique->corner, Corner::FrontRight);
}

TEST(Ttc, HeadOnClosingGap)
{
  const auto r = ttc(pair_of(box(0, 0), {5, 0}, box(14, 0), {0, 0}));
  ASSERT_TRUE(r.ttc);
  EXPECT_EQ(*r.ttc, 2.0);
  EXPECT_EQ(r.witness, WitnessSide::A);
  const auto o = ttc_oracle(pair_of(box(0, 0), {5, 0}, box(14, 0), {0, 0}), 1e-3, 10.0);
  ASSERT_TRUE(o);
  EXPECT_NEAR(*o, 2.0, 1e-3);
}

TEST(Ttc, EqualVelocitiesHaveNoTtc)
{
  for (double gap : {5.0, 30.0, 200.0}) {
    EXPECT_FALSE(ttc(pair_of(box(0, 0), {20, 0}, box(gap, 0), {20, 0})).ttc);
  }
}

TEST(Ttc, DivergingHasNoTtc)
{
  EXPECT_FALSE(ttc(pair_of(box(0, 0), {-5, 0}, box(14, 0), {0, 0})).ttc);
  EXPECT_FALSE(ttc_oracle(pair_of(box(0, 0), {-5, 0}, box(14, 0), {0, 0}), 1e-3, 10.0));
}

TEST(Ttc, OverlapIsZero)
{
  const auto r = ttc(pair_of(box(0, 0), {5, 0}, box(3, 0.5, 0.3), {0, 0}));
  ASSERT_TRUE(r.ttc);
  EXPECT_EQ(*r.ttc, 0.0);
  EXPECT_EQ(r.witness, WitnessSide::None);
  // Overlap takes precedence over the relative-speed floor.
  EXPECT_EQ(ttc(pair_of(box(0, 0), {5, 0}, box(3, 0.5), {5, 0})).ttc, 0.0);
}

TEST(Ttc, ObliqueCaseMatchesStepping)
{
  const PairState p = pair_of(box(0, 0), {20, 0}, box(12, 3.5), {18, -1});
  const auto r = ttc(p);
  ASSERT_TRUE(r.ttc);
  const auto o = ttc_oracle(p, 1e-3, 10.0);
  ASSERT_TRUE(o);
  EXPECT_LE(std::abs(*r.ttc - *o), 2e-3);
  EXPECT_NEAR(*r.ttc, 4.0, 1e-12);
}

TEST(Ttc1d, Examples)
{
  EXPECT_DOUBLE_EQ(*ttc_1d(50, 5, 20, 20, 25), 5.0);
  EXPECT_FALSE(ttc_1d(50, 5, 20, 20, 20));
  EXPECT_FALSE(ttc_1d(50, 5, 25, 20, 20));
  const auto t = ttc_1d(30, 4, 10, 0, 20);
  ASSERT_TRUE(t);
  EXPECT_NEAR(*t, 2.6, 1e-12);
  // Same configuration as boxes: fronts at 30 and 0, lag 4.5 m long.
  const auto r = ttc(pair_of(box(0 - 2.25, 0, 0, 4.5, 1.8), {20, 0}, box(30 - 2, 0, 0, 4, 1.8), {10, 0}));
  ASSERT_TRUE(r.ttc);
  EXPECT_NEAR(*r.ttc, *t, 1e-9);
}

TEST(Ttc1d, InconsistentConfigurationThrows)
{
  EXPECT_THROW(ttc_1d(20, 5, 20, 30, 25), std::invalid_argument);
  EXPECT_THROW(ttc_1d(20, 5, 20, 18, 25), std::invalid_argument);
}

TEST(Ttc, SymmetricUnderSwap)
{
  for (std::uint64_t i = 0; i < 500; ++i) {
    const PairState p = sample_pair(sweep_seed(77, i));
    const PairState q{p.box_b, p.vel_b, p.box_a, p.vel_a};
    const auto a = ttc(p).ttc;
    const auto b = ttc(q).ttc;
    ASSERT_EQ(a.has_value(), b.has_value()) << i;
    if (a) {
      EXPECT_NEAR(*a, *b, 1e-9) << i;
    }
  }
}

TEST(Ttc, AgreesWithExactContactTime)
{
  int colliding = 0;
  for (std::uint64_t i = 0; i < 2000; ++i) {
    const PairState p = sample_pair(sweep_seed(1, i));
    const auto got = ttc(p).ttc;
    const auto want = contact_time(p, std::numeric_limits<double>::infinity());
    ASSERT_EQ(got.has_value(), want.has_value()) << "pair " << i;
    if (got) {
      EXPECT_NEAR(*got, *want, 1e-7 * std::max(1.0, *want)) << "pair " << i;
      ++colliding;
    }
  }
  EXPECT_GT(colliding, 500);
}

TEST(Ttc, GrazingCorpusAgreesWithExactContactTime)
{
  for (const auto & c : grazing_corpus()) {
    const auto got = ttc(c.pair).ttc;
    const auto want = contact_time(c.pair, std::numeric_limits<double>::infinity());
    ASSERT_EQ(got.has_value(), want.has_value()) << c.name;
    if (got) {
      // The reference pads contact by 1e-9 m, i.e. 1e-9 / |rel| seconds.
      const double pad = 1e-9 / std::max(norm(c.pair.vel_a - c.pair.vel_b), 1e-6);
      EXPECT_NEAR(*got, *want, 1e-7 + pad) << c.name;
    }
  }
}

TEST(TtcOracle, SteppingWithinTwoStepsOfContact)
{
  for (std::uint64_t i = 0; i < 300; ++i) {
    const PairState p = sample_pair(sweep_seed(2, i));
    const auto step = ttc_oracle(p, 1e-3, 10.0);
    const auto exact = contact_time(p, 10.0);
    ASSERT_EQ(step.has_value(), exact.has_value()) << i;
    if (step) {
      EXPECT_GE(*step + 1e-12, *exact) << i;
      EXPECT_LE(*step - *exact, 1e-3 + 1e-12) << i;
    }
  }
}

TEST(TtcOracle, ContinuousContactMatchesReference)
{
  for (std::uint64_t i = 0; i < 500; ++i) {
    const PairState p = sample_pair(sweep_seed(3, i));
    const auto a = first_contact_time(p, 10.0);
    const auto b = contact_time(p, 10.0);
    ASSERT_EQ(a.has_value(), b.has_value()) << i;
    if (a) {
      EXPECT_NEAR(*a, *b, 1e-9) << i;
    }
  }
}

TEST(TtcOracle, RejectsBadArguments)
{
  const PairState p = pair_of(box(0, 0), {5, 0}, box(14, 0), {0, 0});
  EXPECT_THROW(ttc_oracle(p, 0.0, 10.0), std::invalid_argument);
  EXPECT_THROW(ttc_oracle(p, 1e-3, -1.0), std::invalid_argument);
}

TEST(BoxesOverlap, TouchingCounts)
{
  EXPECT_TRUE(boxes_overlap(box(0, 0), box(4, 0)));
  EXPECT_TRUE(boxes_overlap(box(0, 0), box(4, 2)));
  EXPECT_FALSE(boxes_overlap(box(0, 0), box(4.001, 0)));
  EXPECT_FALSE(boxes_overlap(box(0, 0), box(3, 3.5, std::numbers::pi / 4)));
}

TEST(PairSampler, PureFunctionOfSeed)
{
  const PairState a = sample_pair(123);
  const PairState b = sample_pair(123);
  EXPECT_EQ(a.box_a.center, b.box_a.center);
  EXPECT_EQ(a.vel_b, b.vel_b);
  EXPECT_NE(sweep_seed(0, 0), sweep_seed(0, 1));
  for (std::uint64_t s = 0; s < 500; ++s) {
    const PairState p = sample_pair(s);
    for (const OrientedBox * b : {&p.box_a, &p.box_b}) {
      EXPECT_GE(b->length, 2.0);
      EXPECT_LE(b->length, 18.0);
      EXPECT_GE(b->width, 2.0);
      EXPECT_LE(b->width, b->length);
    }
    EXPECT_LE(norm(p.vel_a), 40.0);
  }
}

}  // namespace
}  // namespace mergesafe
