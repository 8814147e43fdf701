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

// Template view of a single DFT coefficient on an N x N gray image.
//
// With theta(n, m) = -2 pi (u n + v m) / N the coefficient at (u, v) splits
// into four non-negative templates
//   R+ = max(cos theta, 0)   R- = max(-cos theta, 0)
//   I+ = max(sin theta, 0)   I- = max(-sin theta, 0)
// and Re F(u, v) = sum x R+ - sum x R-, Im F(u, v) = sum x I+ - sum x I-.

#ifndef APRKIT_TEMPLATES_HPP_
#define APRKIT_TEMPLATES_HPP_

#include <map>
#include <memory>
#include <shared_mutex>
#include <tuple>

#include "aprkit/grid.hpp"

namespace aprkit {

struct TemplateSet {
  std::size_t u = 0;
  std::size_t v = 0;
  RealGrid real_plus;
  RealGrid real_minus;
  RealGrid imag_plus;
  RealGrid imag_minus;
};

TemplateSet TemplatesAt(std::size_t size, std::size_t u, std::size_t v);

struct ContrastScores {
  double real = 0.0;
  double imag = 0.0;
};

// `image` must be single-channel and square.
ContrastScores ComputeContrastScores(const Image& image, const TemplateSet& t);
ContrastScores ComputeContrastScores(const Image& image, std::size_t u,
                                     std::size_t v);

// atan2(I, R) of the contrast scores; 0 when both vanish.
double PhaseViaTemplates(const Image& image, std::size_t u, std::size_t v);

// Read-mostly cache of template sets keyed by (size, u, v). Safe for
// concurrent use.
class TemplateCache {
 public:
  std::shared_ptr<const TemplateSet> Get(std::size_t size, std::size_t u,
                                         std::size_t v);
  std::size_t size() const;

 private:
  using Key = std::tuple<std::size_t, std::size_t, std::size_t>;
  mutable std::shared_mutex mu_;
  std::map<Key, std::shared_ptr<const TemplateSet>> sets_;
};

}  // namespace aprkit

#endif  // APRKIT_TEMPLATES_HPP_
