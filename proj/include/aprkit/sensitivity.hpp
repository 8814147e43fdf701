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

// Fourier-basis sensitivity: additive single-frequency perturbations and the
// 33 x 33 error-rate heatmap over offsets i, j in [-16, 16].

#ifndef APRKIT_SENSITIVITY_HPP_
#define APRKIT_SENSITIVITY_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "aprkit/grid.hpp"

namespace aprkit {

inline constexpr int kMaxBasisOffset = 16;
inline constexpr std::size_t kHeatmapSide = 2 * kMaxBasisOffset + 1;  // 33
inline constexpr double kDefaultBasisNorm = 15.0;

struct FourierBasisImage {
  int i = 0;
  int j = 0;
  RealGrid image;  // single channel, real valued
  double l2_norm = 0.0;
};

// Real cosine pattern from unit mass at (i, j) and its conjugate partner
// (-i, -j), scaled to Euclidean norm `norm`.
FourierBasisImage MakeFourierBasis(std::size_t height, std::size_t width,
                                   int i, int j, double norm);

// x + s * basis on every channel, clamped to [0, 1]; s = +-1 per image,
// drawn from (sign_seed, image index).
std::vector<Image> PerturbImages(std::span<const Image> images,
                                 const FourierBasisImage& basis,
                                 std::uint64_t sign_seed);
int PerturbSign(std::uint64_t sign_seed, std::size_t index);

struct SensitivityRecord {
  int i = 0;
  int j = 0;
  std::int64_t n_total = 0;
  std::int64_t n_wrong = 0;
  bool operator==(const SensitivityRecord&) const = default;
};

struct SensitivityHeatmap {
  // rates.at(0, i + 16, j + 16); 33 x 33 x 1.
  RealGrid rates;
  // Offsets without a record (their cell is 0).
  std::vector<std::pair<int, int>> missing;
  bool complete() const { return missing.empty(); }
};

// Throws kData on duplicates, out-of-range offsets, or inconsistent counts.
SensitivityHeatmap AggregateHeatmap(std::span<const SensitivityRecord> records);

// CSV with header `i,j,n_total,n_wrong`.
void WriteSensitivityRecords(std::ostream& out,
                             std::span<const SensitivityRecord> records);
std::vector<SensitivityRecord> ReadSensitivityRecords(std::istream& in);

// 33 rows of 33 comma-separated rates, row index i + 16.
void WriteHeatmapCsv(std::ostream& out, const SensitivityHeatmap& heatmap);

// Rates mapped to gray levels (0 -> black, 1 -> white).
Image HeatmapImage(const SensitivityHeatmap& heatmap);

}  // namespace aprkit

#endif  // APRKIT_SENSITIVITY_HPP_
