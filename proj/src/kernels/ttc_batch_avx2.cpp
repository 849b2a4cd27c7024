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

// AVX2 variant of the TTC batch kernel. Every lane repeats the operation
// sequence of mergesafe::detail::ttc_frames exactly (no FMA, same
// association), so results match the scalar kernel bit for bit.

#include "mergesafe/kernels/ttc_batch.hpp"

#include <immintrin.h>

#include <cstdint>
#include <limits>

namespace mergesafe::kernels::detail
{

namespace
{

using V = __m256d;

inline V load(const std::vector<double> & v, std::size_t i) { return _mm256_loadu_pd(v.data() + i); }
inline V splat(double x) { return _mm256_set1_pd(x); }
inline V add(V a, V b) { return _mm256_add_pd(a, b); }
inline V sub(V a, V b) { return _mm256_sub_pd(a, b); }
inline V mul(V a, V b) { return _mm256_mul_pd(a, b); }
inline V div(V a, V b) { return _mm256_div_pd(a, b); }
inline V vsqrt(V a) { return _mm256_sqrt_pd(a); }
inline V neg(V a) { return _mm256_xor_pd(a, splat(-0.0)); }
inline V vabs(V a) { return _mm256_andnot_pd(splat(-0.0), a); }
inline V gt(V a, V b) { return _mm256_cmp_pd(a, b, _CMP_GT_OQ); }
inline V ge(V a, V b) { return _mm256_cmp_pd(a, b, _CMP_GE_OQ); }
inline V lt(V a, V b) { return _mm256_cmp_pd(a, b, _CMP_LT_OQ); }
inline V le(V a, V b) { return _mm256_cmp_pd(a, b, _CMP_LE_OQ); }
inline V mand(V a, V b) { return _mm256_and_pd(a, b); }
inline V mor(V a, V b) { return _mm256_or_pd(a, b); }
inline V mnot(V a) { return _mm256_xor_pd(a, _mm256_castsi256_pd(_mm256_set1_epi64x(-1))); }
// mask ? b : a
inline V select(V mask, V a, V b) { return _mm256_blendv_pd(a, b, mask); }

struct Box4
{
  V cx, cy, c, s, hl, hw;
};

struct Corners4
{
  V x[4];
  V y[4];
};

Corners4 corners4(const Box4 & b)
{
  const V lx[4] = {b.hl, b.hl, neg(b.hl), neg(b.hl)};
  const V ly[4] = {b.hw, neg(b.hw), neg(b.hw), b.hw};
  Corners4 out;
  for (int i = 0; i < 4; ++i) {
    out.x[i] = add(b.cx, sub(mul(b.c, lx[i]), mul(b.s, ly[i])));
    out.y[i] = add(b.cy, add(mul(b.s, lx[i]), mul(b.c, ly[i])));
  }
  return out;
}

V projected_radius(const Box4 & b, V nx, V ny)
{
  return add(
    mul(b.hl, vabs(add(mul(b.c, nx), mul(b.s, ny)))),
    mul(b.hw, vabs(add(mul(neg(b.s), nx), mul(b.c, ny)))));
}

V overlap_mask(const Box4 & a, const Box4 & b)
{
  const V axes[4][2] = {{a.c, a.s}, {neg(a.s), a.c}, {b.c, b.s}, {neg(b.s), b.c}};
  const V dx = sub(a.cx, b.cx);
  const V dy = sub(a.cy, b.cy);
  V separated = _mm256_setzero_pd();
  for (const auto & n : axes) {
    const V gap = vabs(add(mul(dx, n[0]), mul(dy, n[1])));
    separated = mor(separated, gt(gap, add(projected_radius(a, n[0], n[1]), projected_radius(b, n[0], n[1]))));
  }
  return mnot(separated);
}

struct Best4
{
  V distance;
  V corner;  // -1 when no hit
};

Best4 collision_distance4(const Box4 & moving, const Box4 & stationary, V dx, V dy)
{
  const Corners4 from = corners4(moving);
  const Corners4 to = corners4(stationary);
  const V dir_len = vsqrt(add(mul(dx, dx), mul(dy, dy)));
  const V parallel_scale = mul(splat(kParallelEpsilon), dir_len);
  const V zero = _mm256_setzero_pd();
  const V one = splat(1.0);

  Best4 best{splat(std::numeric_limits<double>::infinity()), splat(-1.0)};
  for (int i = 0; i < 4; ++i) {
    const V ox = from.x[i];
    const V oy = from.y[i];
    for (int j = 0; j < 4; ++j) {
      const V px = to.x[j];
      const V py = to.y[j];
      const V ex = sub(to.x[(j + 1) % 4], px);
      const V ey = sub(to.y[(j + 1) % 4], py);
      const V denom = sub(mul(dx, ey), mul(dy, ex));
      const V edge_len = vsqrt(add(mul(ex, ex), mul(ey, ey)));
      const V not_parallel = gt(vabs(denom), mul(parallel_scale, edge_len));
      const V wx = sub(px, ox);
      const V wy = sub(py, oy);
      const V t = div(sub(mul(wx, ey), mul(wy, ex)), denom);
      const V u = div(sub(mul(wx, dy), mul(wy, dx)), denom);
      const V tol = div(splat(kSegmentTolerance), edge_len);
      const V valid = mand(
        mand(not_parallel, ge(t, zero)), mand(ge(u, neg(tol)), le(u, add(one, tol))));
      const V mx = add(ox, mul(t, dx));
      const V my = add(oy, mul(t, dy));
      const V ddx = sub(ox, mx);
      const V ddy = sub(oy, my);
      const V d = vsqrt(add(mul(ddx, ddx), mul(ddy, ddy)));
      const V better = mand(valid, lt(d, best.distance));
      best.distance = select(better, best.distance, d);
      best.corner = select(better, best.corner, splat(static_cast<double>(i)));
    }
  }
  return best;
}

}  // namespace

void ttc_batch_avx2(const TtcBatch & batch, std::size_t begin, std::size_t end, TtcBatchResult & out)
{
  const V nan = splat(std::numeric_limits<double>::quiet_NaN());
  const V zero = _mm256_setzero_pd();
  const V minus_one = splat(-1.0);
  const V four = splat(4.0);
  for (std::size_t i = begin; i + 4 <= end; i += 4) {
    const Box4 a{load(batch.a_cx, i),  load(batch.a_cy, i),       load(batch.a_cos, i),
                 load(batch.a_sin, i), load(batch.a_half_len, i), load(batch.a_half_wid, i)};
    const Box4 b{load(batch.b_cx, i),  load(batch.b_cy, i),       load(batch.b_cos, i),
                 load(batch.b_sin, i), load(batch.b_half_len, i), load(batch.b_half_wid, i)};
    const V rx = sub(load(batch.a_vx, i), load(batch.b_vx, i));
    const V ry = sub(load(batch.a_vy, i), load(batch.b_vy, i));
    const V speed = vsqrt(add(mul(rx, rx), mul(ry, ry)));

    const V overlap = overlap_mask(a, b);
    const V moving = gt(speed, splat(kRelativeSpeedFloor));
    const Best4 ab = collision_distance4(a, b, rx, ry);
    const Best4 ba = collision_distance4(b, a, neg(rx), neg(ry));

    const V a_ok = ge(ab.corner, zero);
    const V b_ok = ge(ba.corner, zero);
    const V use_a = mand(a_ok, mor(mnot(b_ok), le(ab.distance, ba.distance)));
    const V have = mand(mand(moving, mor(a_ok, b_ok)), mnot(overlap));

    const V d = select(use_a, ba.distance, ab.distance);
    V ttc = select(have, nan, div(d, speed));
    V dist = select(have, nan, d);
    V witness = select(have, minus_one, select(use_a, add(ba.corner, four), ab.corner));
    ttc = select(overlap, ttc, zero);
    dist = select(overlap, dist, zero);
    witness = select(overlap, witness, minus_one);

    _mm256_storeu_pd(out.ttc.data() + i, ttc);
    _mm256_storeu_pd(out.distance.data() + i, dist);
    alignas(32) double w[4];
    _mm256_store_pd(w, witness);
    for (int k = 0; k < 4; ++k) out.witness[i + k] = static_cast<std::int8_t>(w[k]);
  }
}

}  // namespace mergesafe::kernels::detail
