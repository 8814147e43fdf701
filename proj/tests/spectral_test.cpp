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

#include "aprkit/error.hpp"
#include "aprkit/spectral.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "test_util.hpp"

namespace aprkit {
namespace {

using testing::BruteForceDft;
using testing::RandomGrid;
using testing::RandomImage;

TEST(ForwardDft, ConstantImageHasOnlyDc) {
  const Image image(Shape{4, 4, 1}, 0.3);
  const Spectrum f = ForwardDft(image);
  for (std::size_t u = 0; u < 4; ++u) {
    for (std::size_t v = 0; v < 4; ++v) {
      const Complex expected = (u == 0 && v == 0) ? Complex(16 * 0.3, 0.0) : Complex(0.0, 0.0);
      EXPECT_NEAR(std::abs(f.at(0, u, v) - expected), 0.0, 1e-12) << u << "," << v;
    }
  }
}

TEST(ForwardDft, ImpulseHasFlatSpectrum) {
  RealGrid g(Shape{4, 4, 1});
  g.at(0, 0, 0) = 1.0;
  const Spectrum f = ForwardDft(g);
  for (const Complex& z : f.values()) EXPECT_NEAR(std::abs(z - Complex(1.0, 0.0)), 0.0, 1e-12);
}

TEST(ForwardDft, MatchesDoubleSumOnSeveralSizes) {
  std::mt19937_64 gen(11);
  // Powers of two take the FFT path, the rest the direct transform.
  for (const Shape shape : {Shape{4, 4, 1}, Shape{8, 4, 3}, Shape{5, 7, 1},
                            Shape{6, 16, 3}, Shape{1, 9, 1}}) {
    const RealGrid g = RandomGrid(shape, gen);
    const Spectrum f = ForwardDft(g);
    for (std::size_t c = 0; c < shape.channels; ++c) {
      const auto oracle = BruteForceDft(g, c);
      for (std::size_t k = 0; k < oracle.size(); ++k) {
        EXPECT_LT(std::abs(f.channel(c)[k] - oracle[k]), 1e-9) << shape.ToString();
      }
    }
  }
}

TEST(ForwardDft, RejectsZeroSizedGrid) {
  EXPECT_THROW(ForwardDft(RealGrid(Shape{0, 4, 1})), Error);
  try {
    RealGrid g(Shape{4, 0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDimension);
  }
}

TEST(InverseDft, FlatSpectrumGivesImpulse) {
  const Spectrum f(Shape{4, 4, 1}, Complex(1.0, 0.0));
  const Image image = InverseDft(f);
  for (std::size_t y = 0; y < 4; ++y)
    for (std::size_t x = 0; x < 4; ++x)
      EXPECT_NEAR(image.at(0, y, x), (y == 0 && x == 0) ? 1.0 : 0.0, 1e-12);
}

TEST(InverseDft, ClampsButUnclampedVariantDoesNot) {
  RealGrid g(Shape{2, 2, 1}, 0.2);
  g.at(0, 1, 1) = 1.3;
  g.at(0, 0, 1) = -0.4;
  const Spectrum f = ForwardDft(g);
  const RealGrid raw = InverseDftUnclamped(f);
  EXPECT_NEAR(raw.at(0, 1, 1), 1.3, 1e-12);
  EXPECT_NEAR(raw.at(0, 0, 1), -0.4, 1e-12);
  const Image clamped = InverseDft(f);
  EXPECT_EQ(clamped.at(0, 1, 1), 1.0);
  EXPECT_EQ(clamped.at(0, 0, 1), 0.0);
  EXPECT_NEAR(clamped.at(0, 0, 0), 0.2, 1e-12);
}

TEST(Spectral, RoundTripConjugateSymmetryParseval) {
  std::mt19937_64 gen(5);
  for (const Shape shape : {Shape{32, 32, 3}, Shape{7, 12, 1}, Shape{16, 8, 3}}) {
    for (int trial = 0; trial < 5; ++trial) {
      const RealGrid g = RandomGrid(shape, gen);
      const Spectrum f = ForwardDft(g);
      const RealGrid back = InverseDftUnclamped(f);
      EXPECT_LT(testing::MaxAbsDiff(g.values(), back.values()), 1e-9);

      const std::size_t h = shape.height, w = shape.width;
      double energy = 0.0, spectral = 0.0;
      for (std::size_t c = 0; c < shape.channels; ++c) {
        for (std::size_t u = 0; u < h; ++u) {
          for (std::size_t v = 0; v < w; ++v) {
            const Complex mirror = f.at(c, (h - u) % h, (w - v) % w);
            EXPECT_LT(std::abs(f.at(c, u, v) - std::conj(mirror)), 1e-9);
            spectral += std::norm(f.at(c, u, v));
            energy += g.at(c, u, v) * g.at(c, u, v);
          }
        }
      }
      EXPECT_NEAR(energy, spectral / static_cast<double>(h * w), 1e-9 * energy);
    }
  }
}

TEST(Decompose, PolarExamples) {
  Spectrum f(Shape{1, 3, 1});
  f.at(0, 0, 0) = Complex(3.0, 4.0);
  f.at(0, 0, 1) = Complex(-1.0, 0.0);
  f.at(0, 0, 2) = Complex(0.0, 0.0);
  const PolarSpectrum p = Decompose(f);
  EXPECT_DOUBLE_EQ(p.amplitude.at(0, 0, 0), 5.0);
  EXPECT_DOUBLE_EQ(p.phase.at(0, 0, 0), std::atan2(4.0, 3.0));
  EXPECT_DOUBLE_EQ(p.amplitude.at(0, 0, 1), 1.0);
  EXPECT_DOUBLE_EQ(p.phase.at(0, 0, 1), std::numbers::pi);
  EXPECT_EQ(p.amplitude.at(0, 0, 2), 0.0);
  EXPECT_EQ(p.phase.at(0, 0, 2), 0.0);
}

TEST(Decompose, NegativeZeroImaginaryStillGivesPi) {
  Spectrum f(Shape{1, 1, 1});
  f.at(0, 0, 0) = Complex(-2.0, -0.0);
  EXPECT_DOUBLE_EQ(Decompose(f).phase.at(0, 0, 0), std::numbers::pi);
}

TEST(Recombine, Examples) {
  const RealGrid ones(Shape{2, 2, 1}, 1.0);
  const RealGrid zeros(Shape{2, 2, 1}, 0.0);
  const Spectrum unit = Recombine(ones, zeros);
  for (const Complex& z : unit.values()) EXPECT_EQ(z, Complex(1.0, 0.0));

  RealGrid amp(Shape{1, 1, 1}, 5.0);
  RealGrid phase(Shape{1, 1, 1}, std::atan2(4.0, 3.0));
  const Complex z = Recombine(amp, phase).at(0, 0, 0);
  EXPECT_NEAR(z.real(), 3.0, 1e-12);
  EXPECT_NEAR(z.imag(), 4.0, 1e-12);
}

TEST(Recombine, Errors) {
  const RealGrid a(Shape{2, 2, 1}, 1.0);
  const RealGrid b(Shape{2, 3, 1}, 0.0);
  try {
    Recombine(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDimension);
  }
  RealGrid negative = a;
  negative.at(0, 1, 0) = -0.5;
  try {
    Recombine(negative, RealGrid(Shape{2, 2, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDomain);
  }
}

TEST(Polar, RoundTripsBothWays) {
  std::mt19937_64 gen(8);
  const Spectrum f = ForwardDft(RandomGrid(Shape{8, 8, 3}, gen));
  const PolarSpectrum p = Decompose(f);
  const Spectrum back = Recombine(p.amplitude, p.phase);
  for (std::size_t k = 0; k < f.size(); ++k) EXPECT_LT(std::abs(f.values()[k] - back.values()[k]), 1e-12);
  for (double a : p.amplitude.values()) EXPECT_GE(a, 0.0);
  for (double ph : p.phase.values()) {
    EXPECT_GT(ph, -std::numbers::pi);
    EXPECT_LE(ph, std::numbers::pi);
  }

  // Recombine then decompose returns the normalized polar pair.
  RealGrid amp(Shape{1, 4, 1});
  RealGrid phase(Shape{1, 4, 1});
  amp.at(0, 0, 0) = 2.0; phase.at(0, 0, 0) = 0.7;
  amp.at(0, 0, 1) = 1.0; phase.at(0, 0, 1) = -2.5;
  amp.at(0, 0, 2) = 0.0; phase.at(0, 0, 2) = 0.0;
  amp.at(0, 0, 3) = 3.0; phase.at(0, 0, 3) = std::numbers::pi;
  const PolarSpectrum again = Decompose(Recombine(amp, phase));
  EXPECT_LT(testing::MaxAbsDiff(amp.values(), again.amplitude.values()), 1e-12);
  EXPECT_LT(testing::MaxAbsDiff(phase.values(), again.phase.values()), 1e-12);
}

TEST(GuardZeroAmplitude, ReplacesOnlyExactZeros) {
  RealGrid g(Shape{1, 4, 1});
  g.at(0, 0, 0) = 0.0;
  g.at(0, 0, 1) = 0.001;
  g.at(0, 0, 2) = 7.0;
  g.at(0, 0, 3) = 2.5;
  const RealGrid guarded = GuardZeroAmplitude(g);
  EXPECT_EQ(guarded.at(0, 0, 0), 1.0);
  EXPECT_EQ(guarded.at(0, 0, 1), 0.001);
  EXPECT_EQ(guarded.at(0, 0, 2), 7.0);
  EXPECT_EQ(guarded.at(0, 0, 3), 2.5);
  EXPECT_EQ(GuardZeroAmplitude(guarded), guarded);
}

TEST(Shift, CenterAndBackAreInverse) {
  std::mt19937_64 gen(2);
  for (const Shape shape : {Shape{4, 6, 1}, Shape{5, 3, 2}}) {
    const RealGrid g = RandomGrid(shape, gen);
    const RealGrid centered = ShiftToCenter(g);
    EXPECT_EQ(centered.at(0, shape.height / 2, shape.width / 2), g.at(0, 0, 0));
    EXPECT_EQ(ShiftFromCenter(centered), g);
  }
}

TEST(Render, OutputsAreValidImagesOfSameShape) {
  std::mt19937_64 gen(4);
  const Image image = RandomImage(Shape{8, 8, 3}, gen);
  const PolarSpectrum p = Decompose(ForwardDft(image));
  EXPECT_EQ(RenderLogAmplitude(p).shape(), image.shape());
  EXPECT_EQ(RenderPhase(p).shape(), image.shape());
}

}  // namespace
}  // namespace aprkit
