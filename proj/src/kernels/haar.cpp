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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mergesafe::kernels
{

namespace
{
constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
}

namespace detail
{

void haar_analysis_scalar(
  std::span<const double> signal, std::span<double> approx, std::span<double> detail, std::size_t from)
{
  for (std::size_t i = from; i < approx.size(); ++i) {
    const double even = signal[2 * i];
    const double odd = signal[2 * i + 1];
    approx[i] = (even + odd) * kInvSqrt2;
    detail[i] = (even - odd) * kInvSqrt2;
  }
}

void haar_synthesis_scalar(
  std::span<const double> approx, std::span<const double> detail, std::span<double> signal,
  std::size_t from)
{
  for (std::size_t i = from; i < approx.size(); ++i) {
    signal[2 * i] = (approx[i] + detail[i]) * kInvSqrt2;
    signal[2 * i + 1] = (approx[i] - detail[i]) * kInvSqrt2;
  }
}

void soft_threshold_scalar(std::span<double> coeffs, double lambda, std::size_t from)
{
  for (std::size_t i = from; i < coeffs.size(); ++i) {
    coeffs[i] = std::copysign(std::max(std::abs(coeffs[i]) - lambda, 0.0), coeffs[i]);
  }
}

}  // namespace detail

void haar_analysis(
  std::span<const double> signal, std::span<double> approx, std::span<double> detail, Isa isa)
{
  if (signal.size() != 2 * approx.size() || approx.size() != detail.size()) {
    throw std::invalid_argument("haar_analysis: size mismatch");
  }
  std::size_t done = 0;
#if defined(MERGESAFE_HAVE_AVX2)
  if (isa == Isa::Avx2 && isa_supported(isa)) done = detail::haar_analysis_avx2(signal, approx, detail);
#else
  (void)isa;
#endif
  detail::haar_analysis_scalar(signal, approx, detail, done);
}

void haar_synthesis(
  std::span<const double> approx, std::span<const double> detail, std::span<double> signal, Isa isa)
{
  if (signal.size() != 2 * approx.size() || approx.size() != detail.size()) {
    throw std::invalid_argument("haar_synthesis: size mismatch");
  }
  std::size_t done = 0;
#if defined(MERGESAFE_HAVE_AVX2)
  if (isa == Isa::Avx2 && isa_supported(isa)) done = detail::haar_synthesis_avx2(approx, detail, signal);
#else
  (void)isa;
#endif
  detail::haar_synthesis_scalar(approx, detail, signal, done);
}

void soft_threshold(std::span<double> coeffs, double lambda, Isa isa)
{
  std::size_t done = 0;
#if defined(MERGESAFE_HAVE_AVX2)
  if (isa == Isa::Avx2 && isa_supported(isa)) done = detail::soft_threshold_avx2(coeffs, lambda);
#else
  (void)isa;
#endif
  detail::soft_threshold_scalar(coeffs, lambda, done);
}

}  // namespace mergesafe::kernels
