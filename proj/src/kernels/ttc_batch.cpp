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

#include "mergesafe/kernels/ttc_batch.hpp"

#include <cmath>
#include <limits>

namespace mergesafe::kernels
{

void TtcBatch::reserve(std::size_t n)
{
  for (auto * v : {&a_cx, &a_cy, &a_cos, &a_sin, &a_half_len, &a_half_wid, &a_vx, &a_vy, &b_cx,
                   &b_cy, &b_cos, &b_sin, &b_half_len, &b_half_wid, &b_vx, &b_vy}) {
    v->reserve(n);
  }
}

void TtcBatch::push_back(const BoxFrame & a, const Vec2 & vel_a, const BoxFrame & b, const Vec2 & vel_b)
{
  a_cx.push_back(a.cx);
  a_cy.push_back(a.cy);
  a_cos.push_back(a.cos_h);
  a_sin.push_back(a.sin_h);
  a_half_len.push_back(a.half_length);
  a_half_wid.push_back(a.half_width);
  a_vx.push_back(vel_a.x);
  a_vy.push_back(vel_a.y);
  b_cx.push_back(b.cx);
  b_cy.push_back(b.cy);
  b_cos.push_back(b.cos_h);
  b_sin.push_back(b.sin_h);
  b_half_len.push_back(b.half_length);
  b_half_wid.push_back(b.half_width);
  b_vx.push_back(vel_b.x);
  b_vy.push_back(vel_b.y);
}

void TtcBatch::push_back(const PairState & pair)
{
  push_back(make_frame(pair.box_a), pair.vel_a, make_frame(pair.box_b), pair.vel_b);
}

void TtcBatchResult::resize(std::size_t n)
{
  ttc.resize(n);
  distance.resize(n);
  witness.resize(n);
}

TtcResult TtcBatchResult::at(std::size_t i) const
{
  TtcResult r;
  if (!std::isnan(ttc[i])) {
    r.ttc = ttc[i];
    r.collision_distance = distance[i];
  }
  if (witness[i] >= 0) {
    r.witness = witness[i] < 4 ? WitnessSide::A : WitnessSide::B;
    r.witness_corner = static_cast<Corner>(witness[i] % 4);
  }
  return r;
}

namespace detail
{

void ttc_batch_scalar(const TtcBatch & batch, std::size_t begin, std::size_t end, TtcBatchResult & out)
{
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = begin; i < end; ++i) {
    const BoxFrame a{batch.a_cx[i],  batch.a_cy[i],       batch.a_cos[i],
                     batch.a_sin[i], batch.a_half_len[i], batch.a_half_wid[i]};
    const BoxFrame b{batch.b_cx[i],  batch.b_cy[i],       batch.b_cos[i],
                     batch.b_sin[i], batch.b_half_len[i], batch.b_half_wid[i]};
    const TtcResult r =
      mergesafe::detail::ttc_frames(a, {batch.a_vx[i], batch.a_vy[i]}, b, {batch.b_vx[i], batch.b_vy[i]});
    out.ttc[i] = r.ttc.value_or(nan);
    out.distance[i] = r.collision_distance.value_or(nan);
    out.witness[i] = r.witness == WitnessSide::None
                       ? std::int8_t{-1}
                       : static_cast<std::int8_t>(
                           static_cast<int>(r.witness_corner) + (r.witness == WitnessSide::B ? 4 : 0));
  }
}

}  // namespace detail

void ttc_batch(const TtcBatch & batch, TtcBatchResult & out, Isa isa)
{
  const std::size_t n = batch.size();
  out.resize(n);
  std::size_t done = 0;
#if defined(MERGESAFE_HAVE_AVX2)
  if (isa == Isa::Avx2 && isa_supported(Isa::Avx2)) {
    done = n - n % 4;
    detail::ttc_batch_avx2(batch, 0, done, out);
  }
#else
  (void)isa;
#endif
  detail::ttc_batch_scalar(batch, done, n, out);
}

}  // namespace mergesafe::kernels
