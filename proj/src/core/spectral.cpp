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

#include "aprkit/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace aprkit {
namespace {

// One-dimensional transform of length n. Power-of-two lengths use an
// iterative radix-2 FFT; anything else falls back to the direct sum.
class Dft1d {
 public:
  explicit Dft1d(std::size_t n) : n_(n), twiddle_(n), scratch_(n) {
    for (std::size_t k = 0; k < n; ++k) {
      twiddle_[k] = std::polar(1.0, -2.0 * std::numbers::pi *
                                        static_cast<double>(k) /
                                        static_cast<double>(n));
    }
    radix2_ = (n & (n - 1)) == 0;
    if (radix2_) {
      bit_reverse_.resize(n);
      std::size_t bits = 0;
      while ((std::size_t{1} << bits) < n) ++bits;
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = 0;
        for (std::size_t b = 0; b < bits; ++b) r |= ((i >> b) & 1) << (bits - 1 - b);
        bit_reverse_[i] = r;
      }
    }
  }

  // In-place transform of data[0], data[stride], ..., data[(n-1) stride].
  // The inverse is unscaled.
  void Apply(Complex* data, std::size_t stride, bool inverse) {
    for (std::size_t i = 0; i < n_; ++i) scratch_[i] = data[i * stride];
    if (radix2_) {
      Radix2(inverse);
    } else {
      Direct(inverse);
    }
    for (std::size_t i = 0; i < n_; ++i) data[i * stride] = scratch_[i];
  }

 private:
  Complex Twiddle(std::size_t k, bool inverse) const {
    return inverse ? std::conj(twiddle_[k]) : twiddle_[k];
  }

  void Radix2(bool inverse) {
    for (std::size_t i = 0; i < n_; ++i) {
      if (i < bit_reverse_[i]) std::swap(scratch_[i], scratch_[bit_reverse_[i]]);
    }
    for (std::size_t len = 2; len <= n_; len <<= 1) {
      const std::size_t half = len / 2;
      const std::size_t step = n_ / len;
      for (std::size_t start = 0; start < n_; start += len) {
        for (std::size_t k = 0; k < half; ++k) {
          const Complex w = Twiddle(k * step, inverse);
          const Complex a = scratch_[start + k];
          const Complex b = scratch_[start + k + half] * w;
          scratch_[start + k] = a + b;
          scratch_[start + k + half] = a - b;
        }
      }
    }
  }

  void Direct(bool inverse) {
    std::vector<Complex> out(n_);
    for (std::size_t k = 0; k < n_; ++k) {
      Complex acc = 0.0;
      for (std::size_t j = 0; j < n_; ++j) {
        acc += scratch_[j] * Twiddle((k * j) % n_, inverse);
      }
      out[k] = acc;
    }
    scratch_.swap(out);
  }

  std::size_t n_;
  bool radix2_ = false;
  std::vector<Complex> twiddle_;
  std::vector<std::size_t> bit_reverse_;
  std::vector<Complex> scratch_;
};

void Transform2d(Spectrum& grid, bool inverse) {
  const std::size_t h = grid.height(), w = grid.width();
  Dft1d rows(w);
  Dft1d cols(h);
  for (std::size_t c = 0; c < grid.channels(); ++c) {
    Complex* plane = grid.channel(c).data();
    for (std::size_t y = 0; y < h; ++y) rows.Apply(plane + y * w, 1, inverse);
    for (std::size_t x = 0; x < w; ++x) cols.Apply(plane + x, w, inverse);
  }
}

}  // namespace

Spectrum ForwardDft(const RealGrid& grid) {
  if (grid.size() == 0) Fail(ErrorKind::kDimension, "zero-sized grid");
  Spectrum out(grid.shape());
  const auto src = grid.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = Complex(src[i], 0.0);
  Transform2d(out, /*inverse=*/false);
  return out;
}

RealGrid InverseDftUnclamped(const Spectrum& spectrum) {
  if (spectrum.size() == 0) Fail(ErrorKind::kDimension, "zero-sized spectrum");
  Spectrum work = spectrum;
  Transform2d(work, /*inverse=*/true);
  const double scale =
      1.0 / static_cast<double>(spectrum.height() * spectrum.width());
  RealGrid out(spectrum.shape());
  const auto src = work.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i].real() * scale;
  return out;
}

Image InverseDft(const Spectrum& spectrum) {
  return Image::Clamped(InverseDftUnclamped(spectrum));
}

PolarSpectrum Decompose(const Spectrum& spectrum) {
  PolarSpectrum polar{RealGrid(spectrum.shape()), RealGrid(spectrum.shape())};
  const auto src = spectrum.values();
  auto amp = polar.amplitude.values();
  auto phase = polar.phase.values();
  for (std::size_t i = 0; i < src.size(); ++i) {
    amp[i] = std::abs(src[i]);
    if (amp[i] == 0.0) {
      phase[i] = 0.0;
      continue;
    }
    double p = std::atan2(src[i].imag(), src[i].real());
    // atan2 returns -pi for a negative real with -0.0 imaginary part.
    if (p <= -std::numbers::pi) p = std::numbers::pi;
    phase[i] = p;
  }
  return polar;
}

Spectrum Recombine(const RealGrid& amplitude, const RealGrid& phase) {
  CheckSameShape(amplitude.shape(), phase.shape(), "recombine");
  if (amplitude.size() == 0) Fail(ErrorKind::kDimension, "zero-sized grid");
  Spectrum out(amplitude.shape());
  const auto amp = amplitude.values();
  const auto ph = phase.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < amp.size(); ++i) {
    if (!(amp[i] >= 0.0) || !std::isfinite(amp[i])) {
      Fail(ErrorKind::kDomain,
           "amplitude must be finite and non-negative, got " +
               std::to_string(amp[i]));
    }
    dst[i] = std::polar(amp[i], ph[i]);
  }
  return out;
}

RealGrid GuardZeroAmplitude(const RealGrid& amplitude) {
  RealGrid out = amplitude;
  for (double& v : out.values()) {
    if (v == 0.0) v = 1.0;
  }
  return out;
}

Image RenderLogAmplitude(const PolarSpectrum& polar) {
  RealGrid centered = ShiftToCenter(polar.amplitude);
  for (std::size_t c = 0; c < centered.channels(); ++c) {
    auto plane = centered.channel(c);
    double peak = 0.0;
    for (double& v : plane) {
      v = std::log1p(v);
      peak = std::max(peak, v);
    }
    if (peak > 0.0) {
      for (double& v : plane) v /= peak;
    }
  }
  return Image::Clamped(std::move(centered));
}

Image RenderPhase(const PolarSpectrum& polar) {
  RealGrid centered = ShiftToCenter(polar.phase);
  for (double& v : centered.values()) {
    v = (v + std::numbers::pi) / (2.0 * std::numbers::pi);
  }
  return Image::Clamped(std::move(centered));
}

}  // namespace aprkit
