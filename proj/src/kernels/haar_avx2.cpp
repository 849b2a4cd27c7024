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

#include "mergesafe/kernels/haar.hpp"

#include <immintrin.h>

#include <numbers>

namespace mergesafe::kernels::detail
{

namespace
{
constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
}

std::size_t haar_analysis_avx2(
  std::span<const double> signal, std::span<double> approx, std::span<double> detail)
{
  const __m256d k = _mm256_set1_pd(kInvSqrt2);
  const std::size_t n = approx.size() - approx.size() % 4;
  for (std::size_t i = 0; i < n; i += 4) {
    const __m256d lo = _mm256_loadu_pd(signal.data() + 2 * i);      // x0 x1 x2 x3
    const __m256d hi = _mm256_loadu_pd(signal.data() + 2 * i + 4);  // x4 x5 x6 x7
    // unpack gives x0 x4 x2 x6 / x1 x5 x3 x7; the permute restores lane order.
    const __m256d even = _mm256_permute4x64_pd(_mm256_unpacklo_pd(lo, hi), 0xD8);
    const __m256d odd = _mm256_permute4x64_pd(_mm256_unpackhi_pd(lo, hi), 0xD8);
    _mm256_storeu_pd(approx.data() + i, _mm256_mul_pd(_mm256_add_pd(even, odd), k));
    _mm256_storeu_pd(detail.data() + i, _mm256_mul_pd(_mm256_sub_pd(even, odd), k));
  }
  return n;
}

std::size_t haar_synthesis_avx2(
  std::span<const double> approx, std::span<const double> detail, std::span<double> signal)
{
  const __m256d k = _mm256_set1_pd(kInvSqrt2);
  const std::size_t n = approx.size() - approx.size() % 4;
  for (std::size_t i = 0; i < n; i += 4) {
    const __m256d a = _mm256_loadu_pd(approx.data() + i);
    const __m256d d = _mm256_loadu_pd(detail.data() + i);
    const __m256d even = _mm256_permute4x64_pd(_mm256_mul_pd(_mm256_add_pd(a, d), k), 0xD8);
    const __m256d odd = _mm256_permute4x64_pd(_mm256_mul_pd(_mm256_sub_pd(a, d), k), 0xD8);
    _mm256_storeu_pd(signal.data() + 2 * i, _mm256_unpacklo_pd(even, odd));
    _mm256_storeu_pd(signal.data() + 2 * i + 4, _mm256_unpackhi_pd(even, odd));
  }
  return n;
}

std::size_t soft_threshold_avx2(std::span<double> coeffs, double lambda)
{
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  const __m256d lam = _mm256_set1_pd(lambda);
  const __m256d zero = _mm256_setzero_pd();
  const std::size_t n = coeffs.size() - coeffs.size() % 4;
  for (std::size_t i = 0; i < n; i += 4) {
    const __m256d c = _mm256_loadu_pd(coeffs.data() + i);
    const __m256d mag = _mm256_andnot_pd(sign_mask, c);
    // max_pd(x, 0) returns the second operand on equality, matching std::max(x, 0.0)
    // except for x == -0.0, which cannot arise from |c| - lambda.
    const __m256d shrunk = _mm256_max_pd(_mm256_sub_pd(mag, lam), zero);
    _mm256_storeu_pd(coeffs.data() + i, _mm256_or_pd(shrunk, _mm256_and_pd(sign_mask, c)));
  }
  return n;
}

}  // namespace mergesafe::kernels::detail
