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

#include "mergesafe/denoise/wavelet.hpp"

#include "mergesafe/core/ingest.hpp"
#include "mergesafe/core/lanes.hpp"
#include "mergesafe/kernels/haar.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mergesafe
{

namespace
{

constexpr double kMadToSigma = 0.6745;

std::size_t half_up(std::size_t n) { return (n + 1) / 2; }

// Least-squares line through (frame, value).
struct Line
{
  double slope{0.0};
  double intercept{0.0};
  double at(double f) const { return intercept + slope * f; }
};

Line fit_line(std::span<const double> frames, std::span<const double> values)
{
  const double n = static_cast<double>(values.size());
  double mf = 0.0;
  double mv = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    mf += frames[i];
    mv += values[i];
  }
  mf /= n;
  mv /= n;
  double sff = 0.0;
  double sfv = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    sff += (frames[i] - mf) * (frames[i] - mf);
    sfv += (frames[i] - mf) * (values[i] - mv);
  }
  Line line;
  line.slope = sff > 0.0 ? sfv / sff : 0.0;
  line.intercept = mv - line.slope * mf;
  return line;
}

std::vector<double> shrink(std::span<const double> series, int levels)
{
  return dwt_inverse(threshold_details(dwt_forward(series, levels), ThresholdRule::UniversalSoft));
}

std::vector<double> denoise_detrended(
  std::span<const double> frames, std::span<const double> values, int levels)
{
  const Line line = fit_line(frames, values);
  std::vector<double> residual(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) residual[i] = values[i] - line.at(frames[i]);
  std::vector<double> smooth = shrink(residual, levels);
  for (std::size_t i = 0; i < smooth.size(); ++i) smooth[i] += line.at(frames[i]);
  return smooth;
}

}  // namespace

WaveletDecomposition dwt_forward(std::span<const double> series, int levels)
{
  if (levels < 1) throw std::invalid_argument("dwt_forward: levels must be >= 1");
  if (levels >= 63 || series.size() < (std::size_t{1} << levels)) {
    throw std::invalid_argument("dwt_forward: series shorter than 2^levels");
  }
  WaveletDecomposition out;
  out.levels = levels;
  out.original_length = series.size();
  std::vector<double> current(series.begin(), series.end());
  for (int level = 0; level < levels; ++level) {
    if (current.size() % 2 != 0) current.push_back(current.back());
    const std::size_t half = current.size() / 2;
    std::vector<double> approx(half);
    std::vector<double> detail(half);
    kernels::haar_analysis(current, approx, detail);
    out.details.push_back(std::move(detail));
    current = std::move(approx);
  }
  out.approximation = std::move(current);
  return out;
}

std::vector<double> dwt_inverse(const WaveletDecomposition & decomp)
{
  // Lengths before padding at each level.
  std::vector<std::size_t> lengths{decomp.original_length};
  for (int level = 1; level < decomp.levels; ++level) lengths.push_back(half_up(lengths.back()));

  std::vector<double> current = decomp.approximation;
  for (int level = decomp.levels - 1; level >= 0; --level) {
    const auto & detail = decomp.details[static_cast<std::size_t>(level)];
    if (detail.size() != current.size()) {
      throw std::invalid_argument("dwt_inverse: inconsistent coefficient counts");
    }
    std::vector<double> signal(2 * current.size());
    kernels::haar_synthesis(current, detail, signal);
    signal.resize(lengths[static_cast<std::size_t>(level)]);
    current = std::move(signal);
  }
  return current;
}

double universal_threshold(const WaveletDecomposition & decomp)
{
  if (decomp.details.empty() || decomp.details.front().empty() || decomp.original_length < 2) {
    return 0.0;
  }
  std::vector<double> mags;
  mags.reserve(decomp.details.front().size());
  for (double d : decomp.details.front()) mags.push_back(std::abs(d));
  const std::size_t mid = mags.size() / 2;
  std::nth_element(mags.begin(), mags.begin() + static_cast<std::ptrdiff_t>(mid), mags.end());
  double median = mags[mid];
  if (mags.size() % 2 == 0) {
    const double lower = *std::max_element(mags.begin(), mags.begin() + static_cast<std::ptrdiff_t>(mid));
    median = 0.5 * (median + lower);
  }
  const double sigma = median / kMadToSigma;
  return sigma * std::sqrt(2.0 * std::log(static_cast<double>(decomp.original_length)));
}

WaveletDecomposition threshold_details(WaveletDecomposition decomp, double lambda)
{
  for (auto & level : decomp.details) kernels::soft_threshold(level, lambda);
  return decomp;
}

WaveletDecomposition threshold_details(WaveletDecomposition decomp, ThresholdRule rule)
{
  switch (rule) {
    case ThresholdRule::UniversalSoft: {
      const double lambda = universal_threshold(decomp);
      return threshold_details(std::move(decomp), lambda);
    }
  }
  return decomp;
}

std::vector<double> denoise_series(std::span<const double> series, int levels)
{
  std::vector<double> index(series.size());
  for (std::size_t i = 0; i < index.size(); ++i) index[i] = static_cast<double>(i);
  return denoise_detrended(index, series, levels);
}

DenoisedTrack denoise_track(
  const VehicleTrack & track, int levels, double frame_rate, const SiteGeometry & site)
{
  const std::size_t n = track.states.size();
  if (levels < 1 || levels >= 63 || n < (std::size_t{1} << levels) || n < 2) {
    return {track, true};
  }
  std::vector<double> frames(n);
  std::vector<double> xs(n);
  std::vector<double> ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    frames[i] = static_cast<double>(track.states[i].frame);
    xs[i] = track.states[i].x;
    ys[i] = track.states[i].y;
  }
  const auto sx = denoise_detrended(frames, xs, levels);
  const auto sy = denoise_detrended(frames, ys, levels);

  DenoisedTrack out{track, false};
  for (std::size_t i = 0; i < n; ++i) {
    KinematicState & s = out.track.states[i];
    s.x = sx[i];
    s.y = sy[i];
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = i + 1 == n ? n - 1 : i + 1;
    const double dt = (frames[hi] - frames[lo]) / frame_rate;
    s.vx = (sx[hi] - sx[lo]) / dt;
    s.vy = (sy[hi] - sy[lo]) / dt;
    s.heading = derive_heading(s.position(), s.velocity(), s.lane_id, site);
  }
  return out;
}

Dataset denoise_dataset(const Dataset & dataset, int levels, std::size_t * skipped)
{
  std::vector<VehicleTrack> tracks;
  tracks.reserve(dataset.tracks.size());
  std::size_t n_skipped = 0;
  for (const auto & t : dataset.tracks) {
    auto result = denoise_track(t, levels, dataset.site.frame_rate, dataset.site);
    if (result.skipped) ++n_skipped;
    tracks.push_back(std::move(result.track));
  }
  if (skipped != nullptr) *skipped = n_skipped;
  return make_dataset(dataset.site, std::move(tracks), dataset.lanes_from_file);
}

}  // namespace mergesafe
