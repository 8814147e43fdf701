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

#include "aprkit/augment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>

#include "aprkit/seed.hpp"
#include "aprkit/spectral.hpp"

namespace aprkit {
namespace {

// Runs fn(i) for i in [0, n) on up to `workers` threads. The first exception
// thrown by any worker is rethrown on the caller.
template <typename Fn>
void ParallelFor(std::size_t n, std::size_t workers, Fn fn) {
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) {
    threads.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : threads) th.join();
  if (error) std::rethrow_exception(error);
}

void CheckBatch(std::span<const LabeledImage> batch) {
  if (batch.empty()) Fail(ErrorKind::kInvalidArgument, "empty batch");
  for (const LabeledImage& sample : batch) {
    CheckSameShape(batch.front().image.shape(), sample.image.shape(),
                   "batch images");
    if (sample.label < 0) Fail(ErrorKind::kData, "negative label");
  }
}

Image PairFromPolar(const PolarSpectrum& phase_src,
                    const PolarSpectrum& amp_src) {
  return InverseDft(Recombine(amp_src.amplitude, phase_src.phase));
}

}  // namespace

std::string_view AprModeName(AprMode mode) {
  switch (mode) {
    case AprMode::kPair: return "p";
    case AprMode::kSingle: return "s";
    case AprMode::kSinglePair: return "sp";
  }
  return "?";
}

AprMode AprModeFromName(std::string_view name) {
  for (AprMode m : {AprMode::kPair, AprMode::kSingle, AprMode::kSinglePair}) {
    if (AprModeName(m) == name) return m;
  }
  Fail(ErrorKind::kInvalidArgument,
       "unknown mode '" + std::string(name) + "' (expected p, s or sp)");
}

void AprConfig::Validate() const {
  if (!(apply_probability >= 0.0 && apply_probability <= 1.0)) {
    Fail(ErrorKind::kInvalidArgument, "apply probability must be in [0, 1]");
  }
  if (chain_length.min < 1 || chain_length.max < chain_length.min) {
    Fail(ErrorKind::kInvalidArgument,
         "chain length range must be non-empty and positive");
  }
}

RealGrid AprPairUnclamped(const Image& phase_src, const Image& amp_src) {
  CheckSameShape(phase_src.shape(), amp_src.shape(), "apr pair");
  const PolarSpectrum phase = Decompose(ForwardDft(phase_src));
  const PolarSpectrum amp = Decompose(ForwardDft(amp_src));
  return InverseDftUnclamped(Recombine(amp.amplitude, phase.phase));
}

Image AprPair(const Image& phase_src, const Image& amp_src) {
  return Image::Clamped(AprPairUnclamped(phase_src, amp_src));
}

Image AprSingle(const Image& image, const TransformChain& chain_a,
                const TransformChain& chain_b) {
  return AprPair(ApplyChain(image, chain_a), ApplyChain(image, chain_b));
}

BatchPlan PlanBatch(std::size_t batch_size, const AprConfig& config) {
  config.Validate();
  if (batch_size == 0) Fail(ErrorKind::kInvalidArgument, "empty batch");
  BatchPlan plan;
  plan.partner.resize(batch_size);
  std::iota(plan.partner.begin(), plan.partner.end(), std::size_t{0});
  const bool single = config.mode != AprMode::kPair;
  const bool pair = config.mode != AprMode::kSingle;
  if (pair) {
    Rng rng(DeriveSeed(config.seed, SeedStream::kPermutation, 0));
    for (std::size_t i = batch_size - 1; i > 0; --i) {
      std::swap(plan.partner[i], plan.partner[rng.Below(i + 1)]);
    }
  }
  plan.samples.resize(batch_size);
  for (std::size_t i = 0; i < batch_size; ++i) {
    Rng rng(DeriveSeed(config.seed, SeedStream::kSample, i));
    SamplePlan& sample = plan.samples[i];
    if (single) {
      sample.apply_single = rng.Uniform() < config.apply_probability;
      const std::uint64_t seed_a = rng.Next();
      const std::uint64_t seed_b = rng.Next();
      if (sample.apply_single) {
        sample.phase_chain = SampleChain(config.chain_length, seed_a);
        sample.amplitude_chain = SampleChain(config.chain_length, seed_b);
      }
    }
    if (pair) sample.apply_pair = rng.Uniform() < config.apply_probability;
  }
  return plan;
}

std::vector<LabeledImage> ExecutePlan(std::span<const LabeledImage> batch,
                                      const BatchPlan& plan,
                                      std::size_t workers) {
  CheckBatch(batch);
  const std::size_t n = batch.size();
  if (plan.partner.size() != n || plan.samples.size() != n) {
    Fail(ErrorKind::kInvalidArgument, "plan size does not match batch size");
  }
  for (std::size_t p : plan.partner) {
    if (p >= n) Fail(ErrorKind::kInvalidArgument, "plan partner out of range");
  }

  std::vector<LabeledImage> stage(batch.begin(), batch.end());
  ParallelFor(n, workers, [&](std::size_t i) {
    const SamplePlan& s = plan.samples[i];
    if (s.apply_single) {
      stage[i].image = AprSingle(batch[i].image, s.phase_chain,
                                 s.amplitude_chain);
    }
  });

  const bool any_pair =
      std::any_of(plan.samples.begin(), plan.samples.end(),
                  [](const SamplePlan& s) { return s.apply_pair; });
  if (!any_pair) return stage;

  // Each image's spectrum is needed both as a phase source and as a
  // partner's amplitude source; decompose once.
  std::vector<PolarSpectrum> polar(n);
  ParallelFor(n, workers, [&](std::size_t i) {
    polar[i] = Decompose(ForwardDft(stage[i].image));
  });
  std::vector<LabeledImage> out = stage;
  ParallelFor(n, workers, [&](std::size_t i) {
    if (plan.samples[i].apply_pair) {
      out[i].image = PairFromPolar(polar[i], polar[plan.partner[i]]);
    }
  });
  return out;
}

std::vector<LabeledImage> AprBatch(std::span<const LabeledImage> batch,
                                   const AprConfig& config,
                                   std::size_t workers) {
  CheckBatch(batch);
  return ExecutePlan(batch, PlanBatch(batch.size(), config), workers);
}

}  // namespace aprkit
