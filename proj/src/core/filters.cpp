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

#include "aprkit/filters.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aprkit/spectral.hpp"

namespace aprkit {
namespace {

constexpr double kRadiusSlack = 1e-9;

double CenteredDistance(std::size_t y, std::size_t x, std::size_t height,
                        std::size_t width) {
  const double dy = static_cast<double>(y) - static_cast<double>(height / 2);
  const double dx = static_cast<double>(x) - static_cast<double>(width / 2);
  return std::sqrt(dy * dy + dx * dx);
}

}  // namespace

std::string_view BandName(Band band) {
  switch (band) {
    case Band::kLow: return "low";
    case Band::kIntermediate: return "intermediate";
    case Band::kHigh: return "high";
    case Band::kFull: return "full";
  }
  return "?";
}

Band BandFromName(std::string_view name) {
  for (Band b : {Band::kLow, Band::kIntermediate, Band::kHigh, Band::kFull}) {
    if (BandName(b) == name) return b;
  }
  Fail(ErrorKind::kInvalidArgument, "unknown band '" + std::string(name) + "'");
}

double MaxCenteredDistance(std::size_t height, std::size_t width) {
  // Cell (0, 0) is the farthest from (H/2, W/2) for every size.
  return CenteredDistance(0, 0, height, width);
}

BandRadii RadiiFor(Band band, std::size_t height, std::size_t width) {
  const double m = static_cast<double>(std::min(height, width));
  const double r_max = MaxCenteredDistance(height, width);
  switch (band) {
    case Band::kLow: return {0.0, m / 4.0};
    case Band::kIntermediate: return {m / 4.0, m / 2.0};
    case Band::kHigh: return {m / 2.0, r_max};
    case Band::kFull: return {0.0, r_max};
  }
  Fail(ErrorKind::kInvalidArgument, "unknown band");
}

BandMask::BandMask(std::size_t height, std::size_t width, double r_lo,
                   double r_hi)
    : height_(height), width_(width), r_lo_(r_lo), r_hi_(r_hi) {
  if (height == 0 || width == 0) {
    Fail(ErrorKind::kDimension, "band mask needs a non-empty grid");
  }
  if (!(r_lo >= 0.0) || !(r_hi > r_lo)) {
    Fail(ErrorKind::kDomain, "band radii must satisfy 0 <= r_lo < r_hi, got [" +
                                 std::to_string(r_lo) + ", " +
                                 std::to_string(r_hi) + ")");
  }
  closed_upper_ = r_hi + kRadiusSlack >= MaxCenteredDistance(height, width);
  selected_.resize(height * width);
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      const double d = CenteredDistance(y, x, height, width);
      const bool upper_ok = closed_upper_ ? d <= r_hi + kRadiusSlack : d < r_hi;
      selected_[y * width + x] = (d >= r_lo && upper_ok) ? 1 : 0;
    }
  }
}

std::size_t BandMask::Count() const {
  return static_cast<std::size_t>(
      std::count(selected_.begin(), selected_.end(), std::uint8_t{1}));
}

BandMask MakeBandMask(std::size_t height, std::size_t width, Band band) {
  const BandRadii r = RadiiFor(band, height, width);
  return BandMask(height, width, r.lo, r.hi);
}

RealGrid ExtractBand(const PolarSpectrum& polar, const BandMask& mask,
                     SpectrumPart part) {
  const RealGrid& src =
      part == SpectrumPart::kAmplitude ? polar.amplitude : polar.phase;
  if (src.height() != mask.height() || src.width() != mask.width()) {
    Fail(ErrorKind::kDimension,
         "band mask " + std::to_string(mask.height()) + "x" +
             std::to_string(mask.width()) + " does not match spectrum " +
             src.shape().ToString());
  }
  RealGrid out(src.shape(), 0.0);
  for (std::size_t c = 0; c < src.channels(); ++c)
    for (std::size_t u = 0; u < src.height(); ++u)
      for (std::size_t v = 0; v < src.width(); ++v)
        if (mask.SelectedUnshifted(u, v)) out.at(c, u, v) = src.at(c, u, v);
  return out;
}

RealGrid ComposeBandPairUnclamped(const Image& amp_src, Band amp_band,
                                  const Image& phase_src, Band phase_band) {
  CheckSameShape(amp_src.shape(), phase_src.shape(), "compose_band_pair");
  const std::size_t h = amp_src.height(), w = amp_src.width();
  const PolarSpectrum amp_polar = Decompose(ForwardDft(amp_src));
  const PolarSpectrum phase_polar = Decompose(ForwardDft(phase_src));
  const RealGrid amplitude = GuardZeroAmplitude(ExtractBand(
      amp_polar, MakeBandMask(h, w, amp_band), SpectrumPart::kAmplitude));
  const RealGrid phase = ExtractBand(
      phase_polar, MakeBandMask(h, w, phase_band), SpectrumPart::kPhase);
  return InverseDftUnclamped(Recombine(amplitude, phase));
}

Image ComposeBandPair(const Image& amp_src, Band amp_band,
                      const Image& phase_src, Band phase_band) {
  return Image::Clamped(
      ComposeBandPairUnclamped(amp_src, amp_band, phase_src, phase_band));
}

}  // namespace aprkit
