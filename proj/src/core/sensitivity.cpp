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

#include "aprkit/sensitivity.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <string>

#include "aprkit/seed.hpp"
#include "aprkit/spectral.hpp"
#include "text.hpp"

namespace aprkit {
namespace {

std::size_t WrapIndex(int k, std::size_t n) {
  const long m = static_cast<long>(n);
  return static_cast<std::size_t>(((k % m) + m) % m);
}

}  // namespace

FourierBasisImage MakeFourierBasis(std::size_t height, std::size_t width,
                                   int i, int j, double norm) {
  if (std::abs(i) > kMaxBasisOffset || std::abs(j) > kMaxBasisOffset) {
    Fail(ErrorKind::kInvalidArgument,
         "basis offset (" + std::to_string(i) + ", " + std::to_string(j) +
             ") outside [-16, 16]");
  }
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    Fail(ErrorKind::kInvalidArgument, "basis norm must be positive");
  }
  Spectrum spectrum(Shape{height, width, 1}, Complex(0.0, 0.0));
  // Both cells coincide when (i, j) is its own conjugate; the pattern is
  // real either way.
  spectrum.at(0, WrapIndex(i, height), WrapIndex(j, width)) += 1.0;
  spectrum.at(0, WrapIndex(-i, height), WrapIndex(-j, width)) += 1.0;
  RealGrid pattern = InverseDftUnclamped(spectrum);
  double sum_sq = 0.0;
  for (double v : pattern.values()) sum_sq += v * v;
  const double scale = norm / std::sqrt(sum_sq);
  for (double& v : pattern.values()) v *= scale;
  return {i, j, std::move(pattern), norm};
}

int PerturbSign(std::uint64_t sign_seed, std::size_t index) {
  return (DeriveSeed(sign_seed, SeedStream::kPerturbSign, index) >> 63) ? -1
                                                                        : 1;
}

std::vector<Image> PerturbImages(std::span<const Image> images,
                                 const FourierBasisImage& basis,
                                 std::uint64_t sign_seed) {
  if (!(basis.l2_norm > 0.0)) {
    Fail(ErrorKind::kInvalidArgument, "basis with zero norm");
  }
  std::vector<Image> out;
  out.reserve(images.size());
  for (std::size_t k = 0; k < images.size(); ++k) {
    const Image& image = images[k];
    if (image.height() != basis.image.height() ||
        image.width() != basis.image.width()) {
      Fail(ErrorKind::kDimension, "image " + image.shape().ToString() +
                                      " does not match basis " +
                                      basis.image.shape().ToString());
    }
    const double sign = PerturbSign(sign_seed, k);
    RealGrid pixels = image.grid();
    const auto pattern = basis.image.channel(0);
    for (std::size_t c = 0; c < pixels.channels(); ++c) {
      auto plane = pixels.channel(c);
      for (std::size_t p = 0; p < plane.size(); ++p) plane[p] += sign * pattern[p];
    }
    out.push_back(Image::Clamped(std::move(pixels)));
  }
  return out;
}

SensitivityHeatmap AggregateHeatmap(
    std::span<const SensitivityRecord> records) {
  SensitivityHeatmap heatmap{RealGrid({kHeatmapSide, kHeatmapSide, 1}, 0.0), {}};
  std::set<std::pair<int, int>> seen;
  for (const SensitivityRecord& r : records) {
    if (std::abs(r.i) > kMaxBasisOffset || std::abs(r.j) > kMaxBasisOffset) {
      Fail(ErrorKind::kData, "record offset (" + std::to_string(r.i) + ", " +
                                 std::to_string(r.j) + ") outside [-16, 16]");
    }
    if (r.n_total <= 0 || r.n_wrong < 0 || r.n_wrong > r.n_total) {
      Fail(ErrorKind::kData, "inconsistent counts for (" + std::to_string(r.i) +
                                 ", " + std::to_string(r.j) + ")");
    }
    if (!seen.emplace(r.i, r.j).second) {
      Fail(ErrorKind::kData, "duplicate record for (" + std::to_string(r.i) +
                                 ", " + std::to_string(r.j) + ")");
    }
    heatmap.rates.at(0, r.i + kMaxBasisOffset, r.j + kMaxBasisOffset) =
        static_cast<double>(r.n_wrong) / static_cast<double>(r.n_total);
  }
  for (int i = -kMaxBasisOffset; i <= kMaxBasisOffset; ++i) {
    for (int j = -kMaxBasisOffset; j <= kMaxBasisOffset; ++j) {
      if (!seen.contains({i, j})) heatmap.missing.emplace_back(i, j);
    }
  }
  return heatmap;
}

void WriteSensitivityRecords(std::ostream& out,
                             std::span<const SensitivityRecord> records) {
  out << "i,j,n_total,n_wrong\n";
  for (const SensitivityRecord& r : records) {
    out << r.i << ',' << r.j << ',' << r.n_total << ',' << r.n_wrong << '\n';
  }
}

std::vector<SensitivityRecord> ReadSensitivityRecords(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!text::NextLine(in, line, line_no)) {
    Fail(ErrorKind::kData, "empty records file");
  }
  if (text::Trim(line) != "i,j,n_total,n_wrong") {
    Fail(ErrorKind::kData, "records header must be 'i,j,n_total,n_wrong'");
  }
  std::vector<SensitivityRecord> records;
  while (text::NextLine(in, line, line_no)) {
    const auto fields = text::SplitCsv(line);
    if (fields.size() != 4) {
      Fail(ErrorKind::kData,
           "line " + std::to_string(line_no) + ": expected 4 fields");
    }
    records.push_back(
        {static_cast<int>(text::ParseInt(fields[0], line_no)),
         static_cast<int>(text::ParseInt(fields[1], line_no)),
         text::ParseInt(fields[2], line_no), text::ParseInt(fields[3], line_no)});
  }
  return records;
}

void WriteHeatmapCsv(std::ostream& out, const SensitivityHeatmap& heatmap) {
  for (std::size_t r = 0; r < kHeatmapSide; ++r) {
    for (std::size_t c = 0; c < kHeatmapSide; ++c) {
      if (c) out << ',';
      out << text::FormatDouble(heatmap.rates.at(0, r, c));
    }
    out << '\n';
  }
}

Image HeatmapImage(const SensitivityHeatmap& heatmap) {
  return Image::Clamped(heatmap.rates);
}

}  // namespace aprkit
