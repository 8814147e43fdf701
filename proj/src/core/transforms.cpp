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

#include "aprkit/transforms.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numbers>

#include "aprkit/seed.hpp"
#include "json.hpp"

namespace aprkit {
namespace {

constexpr std::array<OpSpec, kOpCount> kRegistry = {{
    {OpId::kAutoContrast, "autocontrast", 0.0, "none", false},
    {OpId::kEqualize, "equalize", 0.0, "none", false},
    {OpId::kPosterize, "posterize", 4.0, "bits_removed", false},
    {OpId::kRotate, "rotate", 30.0, "degrees", true},
    {OpId::kSolarize, "solarize", 256.0, "threshold_drop_8bit", false},
    {OpId::kShearX, "shear_x", 0.3, "shear_factor", true},
    {OpId::kShearY, "shear_y", 0.3, "shear_factor", true},
    {OpId::kTranslateX, "translate_x", 1.0 / 3.0, "fraction_of_side", true},
    {OpId::kTranslateY, "translate_y", 1.0 / 3.0, "fraction_of_side", true},
}};

constexpr std::array<std::string_view, 5> kExcludedOps = {
    "contrast", "color", "brightness", "sharpness", "cutout"};

double LevelFraction(int level) {
  return static_cast<double>(level) / kMaxLevel;
}

// Rounds level * scale / 10 to the nearest integer, halves up.
int ScaledLevel(int level, int scale) { return (level * scale + 5) / 10; }

double SampleBilinear(const Image& image, std::size_t c, double sy,
                      double sx) {
  const double fy0 = std::floor(sy), fx0 = std::floor(sx);
  const double wy = sy - fy0, wx = sx - fx0;
  const long y0 = static_cast<long>(fy0), x0 = static_cast<long>(fx0);
  const long h = static_cast<long>(image.height());
  const long w = static_cast<long>(image.width());
  double acc = 0.0;
  for (int dy = 0; dy < 2; ++dy) {
    const double ky = dy == 0 ? 1.0 - wy : wy;
    if (ky == 0.0) continue;
    for (int dx = 0; dx < 2; ++dx) {
      const double kx = dx == 0 ? 1.0 - wx : wx;
      if (kx == 0.0) continue;
      const long y = y0 + dy, x = x0 + dx;
      const double v =
          (y >= 0 && y < h && x >= 0 && x < w)
              ? image.at(c, static_cast<std::size_t>(y),
                         static_cast<std::size_t>(x))
              : kGeometricFill;
      acc += ky * kx * v;
    }
  }
  return acc;
}

// Inverse-maps every output pixel through `source` (output y, x -> input
// y, x) and samples bilinearly.
template <typename SourceFn>
Image Warp(const Image& image, SourceFn source) {
  RealGrid out(image.shape());
  for (std::size_t c = 0; c < image.channels(); ++c) {
    for (std::size_t y = 0; y < image.height(); ++y) {
      for (std::size_t x = 0; x < image.width(); ++x) {
        const auto [sy, sx] =
            source(static_cast<double>(y), static_cast<double>(x));
        out.at(c, y, x) = SampleBilinear(image, c, sy, sx);
      }
    }
  }
  return Image::Clamped(std::move(out));
}

Image Shift(const Image& image, long dy, long dx) {
  RealGrid out(image.shape(), kGeometricFill);
  const long h = static_cast<long>(image.height());
  const long w = static_cast<long>(image.width());
  for (std::size_t c = 0; c < image.channels(); ++c) {
    for (long y = 0; y < h; ++y) {
      for (long x = 0; x < w; ++x) {
        const long sy = y - dy, sx = x - dx;
        if (sy >= 0 && sy < h && sx >= 0 && sx < w) {
          out.at(c, y, x) = image.at(c, sy, sx);
        }
      }
    }
  }
  return Image(std::move(out));
}

// Applies a per-channel 256-entry lookup table built from the channel's
// quantized values.
template <typename LutFn>
Image MapBytes(const Image& image, LutFn make_lut) {
  RealGrid out(image.shape());
  std::vector<std::uint8_t> bytes(image.shape().plane());
  for (std::size_t c = 0; c < image.channels(); ++c) {
    const auto src = image.channel(c);
    for (std::size_t i = 0; i < src.size(); ++i) bytes[i] = QuantizeToByte(src[i]);
    const std::array<std::uint8_t, 256> lut = make_lut(bytes);
    auto dst = out.channel(c);
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = lut[bytes[i]] / 255.0;
  }
  return Image(std::move(out));
}

std::array<std::uint8_t, 256> IdentityLut() {
  std::array<std::uint8_t, 256> lut{};
  for (int i = 0; i < 256; ++i) lut[i] = static_cast<std::uint8_t>(i);
  return lut;
}

void CheckLevel(int level) {
  if (level < 0 || level > kMaxLevel) {
    Fail(ErrorKind::kInvalidArgument,
         "op level " + std::to_string(level) + " outside 0..10");
  }
}

}  // namespace

std::span<const OpSpec> OpRegistry() { return kRegistry; }

const OpSpec& SpecOf(OpId op) {
  const auto index = static_cast<std::size_t>(op);
  if (index >= kRegistry.size()) {
    Fail(ErrorKind::kInvalidArgument, "unknown op id " + std::to_string(index));
  }
  return kRegistry[index];
}

std::string_view OpName(OpId op) { return SpecOf(op).name; }

OpId OpFromName(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return std::tolower(ch); });
  for (const OpSpec& spec : kRegistry) {
    if (spec.name == lower) return spec.id;
  }
  for (std::string_view excluded : kExcludedOps) {
    if (excluded == lower) {
      Fail(ErrorKind::kInvalidArgument,
           "op '" + lower +
               "' is excluded: it overlaps the evaluation corruptions");
    }
  }
  Fail(ErrorKind::kInvalidArgument, "unknown op '" + std::string(name) + "'");
}

std::string OpRegistryJson() {
  nlohmann::json ops = nlohmann::json::array();
  for (const OpSpec& spec : kRegistry) {
    ops.push_back({{"name", spec.name},
                   {"max_magnitude", spec.max_magnitude},
                   {"unit", spec.unit},
                   {"random_sign", spec.random_sign},
                   {"ramp", "linear"}});
  }
  nlohmann::json doc = {
      {"version", kOpRegistryVersion},
      {"max_level", kMaxLevel},
      {"fill", kGeometricFill},
      {"excluded", kExcludedOps},
      {"ops", ops},
  };
  return doc.dump(2);
}

int SignFromSeed(std::uint64_t seed) { return (Mix64(seed) & 1) ? -1 : 1; }

std::uint8_t QuantizeToByte(double v) {
  const double scaled = std::floor(std::clamp(v, 0.0, 1.0) * 255.0 + 0.5);
  return static_cast<std::uint8_t>(scaled);
}

Image Rotate(const Image& image, double degrees) {
  const double theta = degrees * std::numbers::pi / 180.0;
  const double cs = std::cos(theta), sn = std::sin(theta);
  const double cy = (static_cast<double>(image.height()) - 1.0) / 2.0;
  const double cx = (static_cast<double>(image.width()) - 1.0) / 2.0;
  return Warp(image, [&](double y, double x) {
    const double dy = y - cy, dx = x - cx;
    return std::pair{cy + sn * dx + cs * dy, cx + cs * dx - sn * dy};
  });
}

Image ShearX(const Image& image, double factor) {
  const double cy = (static_cast<double>(image.height()) - 1.0) / 2.0;
  return Warp(image, [&](double y, double x) {
    return std::pair{y, x + factor * (y - cy)};
  });
}

Image ShearY(const Image& image, double factor) {
  const double cx = (static_cast<double>(image.width()) - 1.0) / 2.0;
  return Warp(image, [&](double y, double x) {
    return std::pair{y + factor * (x - cx), x};
  });
}

Image TranslateX(const Image& image, int pixels) { return Shift(image, 0, pixels); }
Image TranslateY(const Image& image, int pixels) { return Shift(image, pixels, 0); }

Image AutoContrast(const Image& image) {
  return MapBytes(image, [](const std::vector<std::uint8_t>& bytes) {
    const auto [lo_it, hi_it] = std::minmax_element(bytes.begin(), bytes.end());
    const int lo = *lo_it, hi = *hi_it;
    if (hi <= lo) return IdentityLut();
    const double scale = 255.0 / (hi - lo);
    const double offset = -lo * scale;
    std::array<std::uint8_t, 256> lut{};
    for (int i = 0; i < 256; ++i) {
      const int v = static_cast<int>(i * scale + offset);
      lut[i] = static_cast<std::uint8_t>(std::clamp(v, 0, 255));
    }
    return lut;
  });
}

Image Equalize(const Image& image) {
  return MapBytes(image, [](const std::vector<std::uint8_t>& bytes) {
    std::array<std::size_t, 256> hist{};
    for (std::uint8_t b : bytes) ++hist[b];
    std::size_t total = 0, last_nonzero = 0, nonzero_bins = 0;
    for (std::size_t i = 0; i < 256; ++i) {
      if (hist[i] == 0) continue;
      total += hist[i];
      last_nonzero = hist[i];
      ++nonzero_bins;
    }
    if (nonzero_bins <= 1) return IdentityLut();
    const std::size_t step = (total - last_nonzero) / 255;
    if (step == 0) return IdentityLut();
    std::array<std::uint8_t, 256> lut{};
    std::size_t n = step / 2;
    for (std::size_t i = 0; i < 256; ++i) {
      lut[i] = static_cast<std::uint8_t>(std::min<std::size_t>(n / step, 255));
      n += hist[i];
    }
    return lut;
  });
}

Image Posterize(const Image& image, int bits) {
  if (bits < 1 || bits > 8) {
    Fail(ErrorKind::kInvalidArgument, "posterize bits must be in 1..8");
  }
  const auto mask = static_cast<std::uint8_t>(0xFF << (8 - bits));
  return MapBytes(image, [mask](const std::vector<std::uint8_t>&) {
    std::array<std::uint8_t, 256> lut{};
    for (int i = 0; i < 256; ++i) lut[i] = static_cast<std::uint8_t>(i & mask);
    return lut;
  });
}

Image Solarize(const Image& image, int threshold) {
  return MapBytes(image, [threshold](const std::vector<std::uint8_t>&) {
    std::array<std::uint8_t, 256> lut{};
    for (int i = 0; i < 256; ++i) {
      lut[i] = static_cast<std::uint8_t>(i < threshold ? i : 255 - i);
    }
    return lut;
  });
}

Image ResizeBilinear(const Image& image, std::size_t height,
                     std::size_t width) {
  if (height == 0 || width == 0) {
    Fail(ErrorKind::kDimension, "resize target must be non-empty");
  }
  if (height == image.height() && width == image.width()) return image;
  const double sy = static_cast<double>(image.height()) / height;
  const double sx = static_cast<double>(image.width()) / width;
  const double max_y = static_cast<double>(image.height() - 1);
  const double max_x = static_cast<double>(image.width() - 1);
  RealGrid out({height, width, image.channels()});
  for (std::size_t c = 0; c < image.channels(); ++c) {
    for (std::size_t y = 0; y < height; ++y) {
      const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, max_y);
      for (std::size_t x = 0; x < width; ++x) {
        const double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, max_x);
        // Edge-clamped coordinates never leave the grid, so no fill is used.
        out.at(c, y, x) = SampleBilinear(image, c, fy, fx);
      }
    }
  }
  return Image::Clamped(std::move(out));
}

Image ApplyOp(const Image& image, OpId op, int level, std::uint64_t seed) {
  CheckLevel(level);
  const OpSpec& spec = SpecOf(op);
  const double signed_fraction =
      LevelFraction(level) * (spec.random_sign ? SignFromSeed(seed) : 1);
  switch (op) {
    case OpId::kAutoContrast: return AutoContrast(image);
    case OpId::kEqualize: return Equalize(image);
    case OpId::kPosterize:
      return Posterize(image, 8 - ScaledLevel(level, 4));
    case OpId::kSolarize:
      return Solarize(image, 256 - ScaledLevel(level, 256));
    case OpId::kRotate:
      return Rotate(image, signed_fraction * spec.max_magnitude);
    case OpId::kShearX:
      return ShearX(image, signed_fraction * spec.max_magnitude);
    case OpId::kShearY:
      return ShearY(image, signed_fraction * spec.max_magnitude);
    case OpId::kTranslateX:
      return TranslateX(image, static_cast<int>(std::lround(
                                   signed_fraction * spec.max_magnitude *
                                   static_cast<double>(image.width()))));
    case OpId::kTranslateY:
      return TranslateY(image, static_cast<int>(std::lround(
                                   signed_fraction * spec.max_magnitude *
                                   static_cast<double>(image.height()))));
  }
  Fail(ErrorKind::kInvalidArgument, "unknown op");
}

Image ApplyChain(const Image& image, const TransformChain& chain) {
  Image current = image;
  for (const TransformStep& step : chain.steps) {
    current = ApplyOp(current, step.op, step.level, step.seed);
  }
  return current;
}

TransformChain SampleChain(LengthRange range, std::uint64_t seed) {
  if (range.min < 0 || range.max < range.min) {
    Fail(ErrorKind::kInvalidArgument,
         "chain length range [" + std::to_string(range.min) + ", " +
             std::to_string(range.max) + "] is empty");
  }
  Rng rng(seed);
  const auto span = static_cast<std::uint64_t>(range.max - range.min) + 1;
  const int length = range.min + static_cast<int>(rng.Below(span));
  TransformChain chain;
  chain.steps.reserve(length);
  for (int i = 0; i < length; ++i) {
    TransformStep step;
    step.op = static_cast<OpId>(rng.Below(kOpCount));
    step.level = static_cast<int>(rng.Below(kMaxLevel + 1));
    step.seed = rng.Next();
    chain.steps.push_back(step);
  }
  return chain;
}

}  // namespace aprkit
