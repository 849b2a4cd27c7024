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

#ifndef MERGESAFE__DENOISE__WAVELET_HPP_
#define MERGESAFE__DENOISE__WAVELET_HPP_

#include "mergesafe/core/types.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace mergesafe
{

/// Multi-level Haar decomposition. Odd-length levels are extended by repeating
/// their last sample (half-sample symmetric padding), so level k holds
/// ceil(n_{k-1} / 2) coefficients with n_0 = original_length.
struct WaveletDecomposition
{
  int levels{0};
  /// Scaling coefficients of the coarsest level.
  std::vector<double> approximation;
  /// details[0] is the finest level.
  std::vector<std::vector<double>> details;
  std::size_t original_length{0};
};

inline constexpr int kDefaultWaveletLevels = 3;

/// Throws std::invalid_argument when levels < 1 or the series is shorter than 2^levels.
WaveletDecomposition dwt_forward(std::span<const double> series, int levels);

std::vector<double> dwt_inverse(const WaveletDecomposition & decomp);

/// Universal threshold sigma * sqrt(2 ln N) with sigma = median(|finest details|) / 0.6745.
double universal_threshold(const WaveletDecomposition & decomp);

/// Soft-thresholds every detail coefficient with `lambda`; approximation untouched.
WaveletDecomposition threshold_details(WaveletDecomposition decomp, double lambda);

enum class ThresholdRule { UniversalSoft };

WaveletDecomposition threshold_details(WaveletDecomposition decomp, ThresholdRule rule);

/// Removes the least-squares line, then forward, universal soft threshold,
/// inverse, and adds the line back.
std::vector<double> denoise_series(std::span<const double> series, int levels);

struct DenoisedTrack
{
  VehicleTrack track;
  /// Set when the track was too short for the requested depth and was
  /// returned unchanged.
  bool skipped{false};
};

/// Denoises x(t) and y(t) independently, then recomputes velocities by
/// central differences at `frame_rate` and headings from them. Each series
/// is detrended by its least-squares line before the transform and the line
/// is added back afterwards, so straight constant-speed motion is preserved.
DenoisedTrack denoise_track(
  const VehicleTrack & track, int levels, double frame_rate, const SiteGeometry & site);

/// denoise_track over every track of a dataset; returns the number of skipped tracks.
Dataset denoise_dataset(const Dataset & dataset, int levels, std::size_t * skipped = nullptr);

}  // namespace mergesafe

#endif  // MERGESAFE__DENOISE__WAVELET_HPP_
