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

#ifndef MERGESAFE__KERNELS__HAAR_HPP_
#define MERGESAFE__KERNELS__HAAR_HPP_

#include "mergesafe/kernels/dispatch.hpp"

#include <span>

namespace mergesafe::kernels
{

/// One orthonormal Haar analysis step over an even-length signal:
/// approx[i] = (x[2i] + x[2i+1]) / sqrt2, detail[i] = (x[2i] - x[2i+1]) / sqrt2.
void haar_analysis(
  std::span<const double> signal, std::span<double> approx, std::span<double> detail,
  Isa isa = active_isa());

/// Inverse of haar_analysis; `signal` has twice the coefficient count.
void haar_synthesis(
  std::span<const double> approx, std::span<const double> detail, std::span<double> signal,
  Isa isa = active_isa());

/// In place: c -> sign(c) * max(|c| - lambda, 0). The sign bit is kept, so a
/// coefficient that shrinks to zero becomes a zero of the same sign.
void soft_threshold(std::span<double> coeffs, double lambda, Isa isa = active_isa());

namespace detail
{
void haar_analysis_scalar(std::span<const double>, std::span<double>, std::span<double>, std::size_t from);
void haar_synthesis_scalar(std::span<const double>, std::span<const double>, std::span<double>, std::size_t from);
void soft_threshold_scalar(std::span<double>, double, std::size_t from);
#if defined(MERGESAFE_HAVE_AVX2)
// Each returns the number of leading elements processed.
std::size_t haar_analysis_avx2(std::span<const double>, std::span<double>, std::span<double>);
std::size_t haar_synthesis_avx2(std::span<const double>, std::span<const double>, std::span<double>);
std::size_t soft_threshold_avx2(std::span<double>, double);
#endif
}  // namespace detail

}  // namespace mergesafe::kernels

#endif  // MERGESAFE__KERNELS__HAAR_HPP_
