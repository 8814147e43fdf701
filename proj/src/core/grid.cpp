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

#include <algorithm>
#include <cmath>

#include "aprkit/grid.hpp"

namespace aprkit {
namespace {

void CheckChannels(const Shape& shape) {
  if (shape.channels != 1 && shape.channels != 3) {
    Fail(ErrorKind::kDimension, "image must have 1 or 3 channels, got " +
                                    std::to_string(shape.channels));
  }
}

}  // namespace

Image::Image(RealGrid pixels) : pixels_(std::move(pixels)) {
  if (pixels_.size() == 0) Fail(ErrorKind::kDimension, "empty image");
  CheckChannels(pixels_.shape());
  for (double v : pixels_.values()) {
    // Written so that NaN fails too.
    if (!(v >= 0.0 && v <= 1.0)) {
      Fail(ErrorKind::kDomain,
           "pixel value " + std::to_string(v) + " outside [0, 1]");
    }
  }
}

Image::Image(Shape shape, double fill) : Image(RealGrid(shape, fill)) {}

Image Image::Clamped(RealGrid pixels) {
  for (double& v : pixels.values()) {
    v = std::isnan(v) ? 0.0 : std::clamp(v, 0.0, 1.0);
  }
  return Image(std::move(pixels));
}

Image Image::Channel(std::size_t c) const {
  if (c >= channels()) {
    Fail(ErrorKind::kInvalidArgument, "channel index out of range");
  }
  const auto src = pixels_.channel(c);
  return Image(RealGrid({height(), width(), 1},
                        std::vector<double>(src.begin(), src.end())));
}

}  // namespace aprkit
