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

#ifndef MERGESAFE__KERNELS__TTC_BATCH_HPP_
#define MERGESAFE__KERNELS__TTC_BATCH_HPP_

#include "mergesafe/geometry/ttc.hpp"
#include "mergesafe/kernels/dispatch.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace mergesafe::kernels
{

/// Structure-of-arrays batch of pair states, one lane per pair.
struct TtcBatch
{
  std::vector<double> a_cx, a_cy, a_cos, a_sin, a_half_len, a_half_wid, a_vx, a_vy;
  std::vector<double> b_cx, b_cy, b_cos, b_sin, b_half_len, b_half_wid, b_vx, b_vy;

  std::size_t size() const { return a_cx.size(); }
  void reserve(std::size_t n);
  void push_back(const PairState & pair);
  void push_back(const BoxFrame & a, const Vec2 & vel_a, const BoxFrame & b, const Vec2 & vel_b);
};

/// Per-lane results. NaN marks "no TTC". Witness codes: -1 none, 0..3 corner
/// of A, 4..7 corner of B (corner + 4).
struct TtcBatchResult
{
  std::vector<double> ttc;
  std::vector<double> distance;
  std::vector<std::int8_t> witness;

  void resize(std::size_t n);
  TtcResult at(std::size_t i) const;
};

/// Evaluates every lane with the requested variant. All variants produce
/// bit-identical results.
void ttc_batch(const TtcBatch & batch, TtcBatchResult & out, Isa isa = active_isa());

namespace detail
{
void ttc_batch_scalar(const TtcBatch & batch, std::size_t begin, std::size_t end, TtcBatchResult & out);
#if defined(MERGESAFE_HAVE_AVX2)
/// Processes [begin, end) in groups of four; `end - begin` must be a multiple of 4.
void ttc_batch_avx2(const TtcBatch & batch, std::size_t begin, std::size_t end, TtcBatchResult & out);
#endif
}  // namespace detail

}  // namespace mergesafe::kernels

#endif  // MERGESAFE__KERNELS__TTC_BATCH_HPP_
