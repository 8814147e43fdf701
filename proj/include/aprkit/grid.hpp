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

// Value types shared by every module: a planar H x W x C grid, the
// range-checked Image built on it, and the complex Spectrum.

#ifndef APRKIT_GRID_HPP_
#define APRKIT_GRID_HPP_

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "aprkit/error.hpp"

namespace aprkit {

struct Shape {
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t channels = 0;

  std::size_t plane() const { return height * width; }
  std::size_t size() const { return height * width * channels; }
  bool operator==(const Shape&) const = default;

  std::string ToString() const {
    return std::to_string(height) + "x" + std::to_string(width) + "x" +
           std::to_string(channels);
  }
};

// Planar storage: value (c, y, x) lives at (c * height + y) * width + x.
template <typename T>
class Grid {
 public:
  Grid() = default;
  explicit Grid(Shape shape, T fill = T{}) : shape_(shape) {
    if (shape.height == 0 || shape.width == 0 || shape.channels == 0) {
      Fail(ErrorKind::kDimension, "zero-sized grid " + shape.ToString());
    }
    values_.assign(shape.size(), fill);
  }
  Grid(Shape shape, std::vector<T> values) : Grid(shape) {
    if (values.size() != shape.size()) {
      Fail(ErrorKind::kDimension, "grid value count " +
                                      std::to_string(values.size()) +
                                      " does not match shape " +
                                      shape.ToString());
    }
    values_ = std::move(values);
  }

  const Shape& shape() const { return shape_; }
  std::size_t height() const { return shape_.height; }
  std::size_t width() const { return shape_.width; }
  std::size_t channels() const { return shape_.channels; }
  std::size_t size() const { return values_.size(); }

  T& at(std::size_t c, std::size_t y, std::size_t x) {
    return values_[(c * shape_.height + y) * shape_.width + x];
  }
  const T& at(std::size_t c, std::size_t y, std::size_t x) const {
    return values_[(c * shape_.height + y) * shape_.width + x];
  }

  std::span<T> channel(std::size_t c) {
    return std::span<T>(values_).subspan(c * shape_.plane(), shape_.plane());
  }
  std::span<const T> channel(std::size_t c) const {
    return std::span<const T>(values_).subspan(c * shape_.plane(),
                                               shape_.plane());
  }

  std::span<T> values() { return values_; }
  std::span<const T> values() const { return values_; }

  bool operator==(const Grid&) const = default;

 private:
  Shape shape_;
  std::vector<T> values_;
};

using RealGrid = Grid<double>;
using Complex = std::complex<double>;

// DFT coefficients in unshifted layout: DC at (0, 0) of every channel.
class Spectrum : public Grid<Complex> {
 public:
  using Grid<Complex>::Grid;
};

struct PolarSpectrum {
  RealGrid amplitude;  // >= 0
  RealGrid phase;      // radians in (-pi, pi], 0 where amplitude is 0
};

// A pixel grid with 1 or 3 channels and every value in [0, 1].
class Image {
 public:
  Image() = default;
  // Throws kDomain if any pixel lies outside [0, 1], kDimension on a bad
  // channel count.
  explicit Image(RealGrid pixels);
  Image(Shape shape, double fill);

  // Clamps every value into [0, 1].
  static Image Clamped(RealGrid pixels);

  const Shape& shape() const { return pixels_.shape(); }
  std::size_t height() const { return pixels_.height(); }
  std::size_t width() const { return pixels_.width(); }
  std::size_t channels() const { return pixels_.channels(); }

  double at(std::size_t c, std::size_t y, std::size_t x) const {
    return pixels_.at(c, y, x);
  }
  std::span<const double> channel(std::size_t c) const {
    return pixels_.channel(c);
  }
  std::span<const double> values() const { return pixels_.values(); }
  const RealGrid& grid() const { return pixels_; }

  // Single-channel view of channel c.
  Image Channel(std::size_t c) const;

  bool operator==(const Image&) const = default;

 private:
  RealGrid pixels_;
};

inline void CheckSameShape(const Shape& a, const Shape& b, const char* what) {
  if (!(a == b)) {
    Fail(ErrorKind::kDimension, std::string(what) + ": shape " + a.ToString() +
                                    " vs " + b.ToString());
  }
}

}  // namespace aprkit

#endif  // APRKIT_GRID_HPP_
