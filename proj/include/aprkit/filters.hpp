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

// Radial frequency bands. Masks live in centered layout: DC sits at
// (H / 2, W / 2) and distance is Euclidean from that cell. A band selects
// r_lo <= d < r_hi, except the outermost band (r_hi reaching the farthest
// cell) which is closed so the corners are kept.

#ifndef APRKIT_FILTERS_HPP_
#define APRKIT_FILTERS_HPP_

#include <cstdint>
#include <string_view>
#include <vector>

#include "aprkit/grid.hpp"

namespace aprkit {

enum class Band { kLow, kIntermediate, kHigh, kFull };

std::string_view BandName(Band band);
Band BandFromName(std::string_view name);

struct BandRadii {
  double lo = 0.0;
  double hi = 0.0;
};

// Largest centered distance on an H x W grid (16 sqrt 2 at 32 x 32).
double MaxCenteredDistance(std::size_t height, std::size_t width);

// With m = min(H, W): LOW [0, m/4), INTERMEDIATE [m/4, m/2),
// HIGH [m/2, r_max], FULL [0, r_max]. At 32 x 32 that is [0, 8), [8, 16),
// [16, 16 sqrt 2].
BandRadii RadiiFor(Band band, std::size_t height, std::size_t width);

class BandMask {
 public:
  BandMask(std::size_t height, std::size_t width, double r_lo, double r_hi);

  std::size_t height() const { return height_; }
  std::size_t width() const { return width_; }
  double r_lo() const { return r_lo_; }
  double r_hi() const { return r_hi_; }
  bool closed_upper() const { return closed_upper_; }

  // Centered coordinates.
  bool Selected(std::size_t y, std::size_t x) const {
    return selected_[y * width_ + x] != 0;
  }
  // Unshifted (DFT) coordinates.
  bool SelectedUnshifted(std::size_t u, std::size_t v) const {
    return Selected((u + height_ / 2) % height_, (v + width_ / 2) % width_);
  }
  std::size_t Count() const;

 private:
  std::size_t height_;
  std::size_t width_;
  double r_lo_;
  double r_hi_;
  bool closed_upper_;
  std::vector<std::uint8_t> selected_;
};

BandMask MakeBandMask(std::size_t height, std::size_t width, Band band);

enum class SpectrumPart { kAmplitude, kPhase };

// Keeps the chosen part on selected cells and zeroes the rest.
RealGrid ExtractBand(const PolarSpectrum& polar, const BandMask& mask,
                     SpectrumPart part);

// Band-limited amplitude of `amp_src` (zero-guarded) recombined with the
// band-limited phase of `phase_src`. Covers every cell of the 4 x 4
// amplitude/phase band grid.
RealGrid ComposeBandPairUnclamped(const Image& amp_src, Band amp_band,
                                  const Image& phase_src, Band phase_band);
Image ComposeBandPair(const Image& amp_src, Band amp_band,
                      const Image& phase_src, Band phase_band);

}  // namespace aprkit

#endif  // APRKIT_FILTERS_HPP_
