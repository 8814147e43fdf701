// Copyright 2026 The aprkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Per-channel 2D DFT and the amplitude/phase (polar) view of a spectrum.
//
// Convention: the forward transform is unnormalized,
//   F(u, v) = sum_n sum_m x(n, m) exp(-2 pi i (u n / H + v m / W)),
// and the inverse carries the 1 / (H W) factor.

#ifndef APRKIT_SPECTRAL_HPP_
#define APRKIT_SPECTRAL_HPP_

#include "aprkit/grid.hpp"

namespace aprkit {

Spectrum ForwardDft(const RealGrid& grid);
inline Spectrum ForwardDft(const Image& image) {
  return ForwardDft(image.grid());
}

// Real part of the inverse transform, without clamping.
RealGrid InverseDftUnclamped(const Spectrum& spectrum);

// Real part of the inverse transform clamped into [0, 1]. The spectrum must
// have 1 or 3 channels.
Image InverseDft(const Spectrum& spectrum);

PolarSpectrum Decompose(const Spectrum& spectrum);

// amplitude * exp(i * phase), elementwise. Throws kDimension on shape
// mismatch and kDomain on a negative or non-finite amplitude.
Spectrum Recombine(const RealGrid& amplitude, const RealGrid& phase);

// The zero-amplitude transfer function: exact zeros become 1.
RealGrid GuardZeroAmplitude(const RealGrid& amplitude);

// Moves DC from (0, 0) to (H / 2, W / 2) per channel; UnshiftSpectrum is its
// inverse for odd sizes as well.
template <typename T>
Grid<T> ShiftToCenter(const Grid<T>& grid) {
  Grid<T> out(grid.shape());
  const std::size_t h = grid.height(), w = grid.width();
  for (std::size_t c = 0; c < grid.channels(); ++c)
    for (std::size_t y = 0; y < h; ++y)
      for (std::size_t x = 0; x < w; ++x)
        out.at(c, (y + h / 2) % h, (x + w / 2) % w) = grid.at(c, y, x);
  return out;
}

template <typename T>
Grid<T> ShiftFromCenter(const Grid<T>& grid) {
  Grid<T> out(grid.shape());
  const std::size_t h = grid.height(), w = grid.width();
  for (std::size_t c = 0; c < grid.channels(); ++c)
    for (std::size_t y = 0; y < h; ++y)
      for (std::size_t x = 0; x < w; ++x)
        out.at(c, y, x) = grid.at(c, (y + h / 2) % h, (x + w / 2) % w);
  return out;
}

// Visualizations with DC at the center: log(1 + A) scaled by its per-channel
// maximum, and phase mapped from (-pi, pi] onto (0, 1].
Image RenderLogAmplitude(const PolarSpectrum& polar);
Image RenderPhase(const PolarSpectrum& polar);

}  // namespace aprkit

#endif  // APRKIT_SPECTRAL_HPP_
