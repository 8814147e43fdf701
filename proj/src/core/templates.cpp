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

#include "aprkit/templates.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

namespace aprkit {
namespace {

void CheckGraySquare(const Image& image) {
  if (image.channels() != 1) {
    Fail(ErrorKind::kDimension, "templates need a single-channel image");
  }
  if (image.height() != image.width()) {
    Fail(ErrorKind::kDimension, "templates need a square image, got " +
                                    image.shape().ToString());
  }
}

double WeightedSum(const Image& image, const RealGrid& weights) {
  const auto x = image.values();
  const auto w = weights.values();
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * w[i];
  return acc;
}

}  // namespace

TemplateSet TemplatesAt(std::size_t size, std::size_t u, std::size_t v) {
  if (size == 0) Fail(ErrorKind::kDimension, "template size must be positive");
  if (u >= size || v >= size) {
    Fail(ErrorKind::kInvalidArgument,
         "frequency (" + std::to_string(u) + ", " + std::to_string(v) +
             ") outside 0.." + std::to_string(size - 1));
  }
  const Shape shape{size, size, 1};
  TemplateSet t{u, v, RealGrid(shape), RealGrid(shape), RealGrid(shape),
                RealGrid(shape)};
  for (std::size_t n = 0; n < size; ++n) {
    for (std::size_t m = 0; m < size; ++m) {
      // Reduce the phase index mod N first so large products keep precision.
      const std::size_t k = (u * n + v * m) % size;
      const double theta = -2.0 * std::numbers::pi * static_cast<double>(k) /
                           static_cast<double>(size);
      const double c = std::cos(theta), s = std::sin(theta);
      t.real_plus.at(0, n, m) = std::max(c, 0.0);
      t.real_minus.at(0, n, m) = std::max(-c, 0.0);
      t.imag_plus.at(0, n, m) = std::max(s, 0.0);
      t.imag_minus.at(0, n, m) = std::max(-s, 0.0);
    }
  }
  return t;
}

ContrastScores ComputeContrastScores(const Image& image, const TemplateSet& t) {
  CheckGraySquare(image);
  if (t.real_plus.height() != image.height()) {
    Fail(ErrorKind::kDimension, "template size does not match image");
  }
  return {WeightedSum(image, t.real_plus) - WeightedSum(image, t.real_minus),
          WeightedSum(image, t.imag_plus) - WeightedSum(image, t.imag_minus)};
}

ContrastScores ComputeContrastScores(const Image& image, std::size_t u,
                                     std::size_t v) {
  CheckGraySquare(image);
  return ComputeContrastScores(image, TemplatesAt(image.height(), u, v));
}

double PhaseViaTemplates(const Image& image, std::size_t u, std::size_t v) {
  const ContrastScores s = ComputeContrastScores(image, u, v);
  if (s.real == 0.0 && s.imag == 0.0) return 0.0;
  double p = std::atan2(s.imag, s.real);
  if (p <= -std::numbers::pi) p = std::numbers::pi;
  return p;
}

std::shared_ptr<const TemplateSet> TemplateCache::Get(std::size_t size,
                                                      std::size_t u,
                                                      std::size_t v) {
  const Key key{size, u, v};
  {
    std::shared_lock lock(mu_);
    if (auto it = sets_.find(key); it != sets_.end()) return it->second;
  }
  auto built = std::make_shared<const TemplateSet>(TemplatesAt(size, u, v));
  std::unique_lock lock(mu_);
  return sets_.try_emplace(key, std::move(built)).first->second;
}

std::size_t TemplateCache::size() const {
  std::shared_lock lock(mu_);
  return sets_.size();
}

}  // namespace aprkit
