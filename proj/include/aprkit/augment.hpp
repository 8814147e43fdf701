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

// Amplitude-phase recombination augmentation.
//
//   pair:   iDFT(A(x_j) * exp(i P(x_i)))        label of x_i
//   single: pair(chain_a(x), chain_b(x))          label of x
//   single+pair: single per sample, then pair within the batch
//
// The output label always follows the image that contributed the phase.

#ifndef APRKIT_AUGMENT_HPP_
#define APRKIT_AUGMENT_HPP_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "aprkit/grid.hpp"
#include "aprkit/transforms.hpp"

namespace aprkit {

enum class AprMode { kPair, kSingle, kSinglePair };

std::string_view AprModeName(AprMode mode);  // "p", "s", "sp"
AprMode AprModeFromName(std::string_view name);

struct AprConfig {
  AprMode mode = AprMode::kPair;
  double apply_probability = 1.0;
  std::uint64_t seed = 0;
  LengthRange chain_length{1, 3};

  // Throws kInvalidArgument on a probability outside [0, 1] or an empty or
  // non-positive chain length range.
  void Validate() const;
};

struct LabeledImage {
  Image image;
  std::int64_t label = 0;
};

// Phase from `phase_src`, amplitude from `amp_src`, before clamping.
RealGrid AprPairUnclamped(const Image& phase_src, const Image& amp_src);
Image AprPair(const Image& phase_src, const Image& amp_src);

// Phase from the chain_a view, amplitude from the chain_b view.
Image AprSingle(const Image& image, const TransformChain& chain_a,
                const TransformChain& chain_b);

// Every random decision for one batch, drawn up front so that execution is
// a pure function of (batch, plan).
struct SamplePlan {
  bool apply_single = false;
  TransformChain phase_chain;
  TransformChain amplitude_chain;
  bool apply_pair = false;
};

struct BatchPlan {
  // partner[i] supplies the amplitude for output i.
  std::vector<std::size_t> partner;
  std::vector<SamplePlan> samples;
};

BatchPlan PlanBatch(std::size_t batch_size, const AprConfig& config);

// `workers` > 1 fans out over samples; the result is identical to the
// serial run.
std::vector<LabeledImage> ExecutePlan(std::span<const LabeledImage> batch,
                                      const BatchPlan& plan,
                                      std::size_t workers = 1);

// PlanBatch + ExecutePlan. Throws on an empty batch or mixed shapes.
std::vector<LabeledImage> AprBatch(std::span<const LabeledImage> batch,
                                   const AprConfig& config,
                                   std::size_t workers = 1);

}  // namespace aprkit

#endif  // APRKIT_AUGMENT_HPP_
