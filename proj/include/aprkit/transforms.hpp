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

// The nine augmentation operations used to build the two views for
// single-image recombination, and seeded chain sampling.
//
// Levels run 0..10 and map linearly onto each op's magnitude (see
// OpRegistry()). Level 0 is the identity for every op with a magnitude.
// Geometric ops fill exposed pixels with 0.5 gray; photometric ops work on
// 8-bit quantized values.

#ifndef APRKIT_TRANSFORMS_HPP_
#define APRKIT_TRANSFORMS_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aprkit/grid.hpp"

namespace aprkit {

enum class OpId : std::uint8_t {
  kAutoContrast,
  kEqualize,
  kPosterize,
  kRotate,
  kSolarize,
  kShearX,
  kShearY,
  kTranslateX,
  kTranslateY,
};

inline constexpr int kOpCount = 9;
inline constexpr int kMaxLevel = 10;
inline constexpr int kOpRegistryVersion = 1;
inline constexpr double kGeometricFill = 0.5;

struct OpSpec {
  OpId id;
  std::string_view name;
  // Magnitude reached at level 10. Unit depends on the op: degrees, shear
  // factor, fraction of the side, bits removed, or threshold drop in 8-bit
  // steps. 0 for ops without a magnitude.
  double max_magnitude;
  std::string_view unit;
  bool random_sign;
};

std::span<const OpSpec> OpRegistry();
const OpSpec& SpecOf(OpId op);
std::string_view OpName(OpId op);

// Throws kInvalidArgument for unknown names. contrast, color, brightness,
// sharpness and cutout are rejected explicitly: they overlap the corruptions
// used for evaluation.
OpId OpFromName(std::string_view name);

// Registry (version, op names, ramps) as JSON, for run configs.
std::string OpRegistryJson();

// +1 or -1, drawn from the step seed.
int SignFromSeed(std::uint64_t seed);

struct TransformStep {
  OpId op;
  int level;
  std::uint64_t seed;
  bool operator==(const TransformStep&) const = default;
};

struct TransformChain {
  std::vector<TransformStep> steps;
  bool empty() const { return steps.empty(); }
  bool operator==(const TransformChain&) const = default;
};

struct LengthRange {
  int min = 1;
  int max = 3;
};

Image ApplyOp(const Image& image, OpId op, int level, std::uint64_t seed);
Image ApplyChain(const Image& image, const TransformChain& chain);

// Length uniform over the range, ops uniform with replacement, levels uniform
// over 0..10, one fresh seed per step. Deterministic in `seed`.
TransformChain SampleChain(LengthRange range, std::uint64_t seed);

// Primitive transforms. Angles in degrees (counter-clockwise), shear as a
// factor about the image center, translation in whole pixels.
Image Rotate(const Image& image, double degrees);
Image ShearX(const Image& image, double factor);
Image ShearY(const Image& image, double factor);
Image TranslateX(const Image& image, int pixels);
Image TranslateY(const Image& image, int pixels);
Image AutoContrast(const Image& image);
Image Equalize(const Image& image);
Image Posterize(const Image& image, int bits);
Image Solarize(const Image& image, int threshold);

Image ResizeBilinear(const Image& image, std::size_t height, std::size_t width);

// round(v * 255) with halves rounded up.
std::uint8_t QuantizeToByte(double v);

}  // namespace aprkit

#endif  // APRKIT_TRANSFORMS_HPP_
