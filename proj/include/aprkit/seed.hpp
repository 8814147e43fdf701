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

#ifndef APRKIT_SEED_HPP_
#define APRKIT_SEED_HPP_

#include <cstdint>
#include <random>

namespace aprkit {

// splitmix64 finalizer.
constexpr std::uint64_t Mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Seed streams. Values are part of the reproducibility contract; never
// renumber.
enum class SeedStream : std::uint64_t {
  kPermutation = 1,
  kSample = 2,
  kBatch = 3,
  kChainStep = 4,
  kPerturbSign = 5,
  kSubset = 6,
};

// Child seed for (stream, index) under `base`. Independent of evaluation
// order, so parallel workers reproduce the serial result.
constexpr std::uint64_t DeriveSeed(std::uint64_t base, SeedStream stream,
                                   std::uint64_t index) {
  return Mix64(Mix64(base ^ Mix64(static_cast<std::uint64_t>(stream))) +
               index);
}

// Portable generator: mt19937_64's output sequence is fixed by the standard;
// the integer/real mappings below are ours so results match across
// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t Next() { return engine_(); }

  // Uniform in [0, bound). bound must be > 0.
  std::uint64_t Below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r;
    do {
      r = engine_();
    } while (r >= limit);
    return r % bound;
  }

  // Uniform in [0, 1) with 53 random bits.
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace aprkit

#endif  // APRKIT_SEED_HPP_
