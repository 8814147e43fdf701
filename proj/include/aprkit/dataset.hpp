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

// Dataset-level jobs over raster trees described by a manifest.
//
// A manifest is JSON Lines, one {"path", "label", "split"} object per image;
// paths are relative to the manifest's directory.

#ifndef APRKIT_DATASET_HPP_
#define APRKIT_DATASET_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "aprkit/augment.hpp"
#include "aprkit/sensitivity.hpp"

namespace aprkit {

struct ManifestEntry {
  std::string path;
  std::int64_t label = 0;
  std::string split = "train";
  bool operator==(const ManifestEntry&) const = default;
};

struct DatasetManifest {
  std::filesystem::path root;
  std::vector<ManifestEntry> entries;
};

// Throws kData on duplicate paths, negative labels or malformed lines.
DatasetManifest ReadManifest(const std::filesystem::path& file);
void WriteManifest(const DatasetManifest& manifest,
                   const std::filesystem::path& file);
void ValidateManifest(const DatasetManifest& manifest);

inline constexpr std::size_t kDefaultBatchSize = 128;
inline constexpr const char* kManifestFileName = "manifest.jsonl";
inline constexpr const char* kIncompleteMarker = ".incomplete";

struct AugmentOptions {
  std::size_t batch_size = kDefaultBatchSize;
  std::size_t workers = 1;
};

// Plan used for batch `batch_index` of a dataset run.
BatchPlan PlanDatasetBatch(const AprConfig& config, std::size_t batch_index,
                           std::size_t batch_size);

// Splits the manifest into consecutive batches, runs the recombination on
// each and writes <out_root>/<path with .png extension>, manifest.jsonl and
// run.json. A .incomplete marker exists in out_root until the run finishes;
// it is left behind (with the error text) when the run fails.
DatasetManifest AugmentDataset(const DatasetManifest& manifest,
                               const AprConfig& config,
                               const std::filesystem::path& out_root,
                               const AugmentOptions& options = {});

// Basis files are named "<i>_<j>.csv": one row per image row, values at full
// precision. A PNG preview is written next to each.
std::filesystem::path WriteBasisFile(const FourierBasisImage& basis,
                                     const std::filesystem::path& dir);
FourierBasisImage ReadBasisFile(const std::filesystem::path& file);

// Seeded subset of `count` entries in manifest order; the whole manifest when
// count is 0 or not smaller than its size.
DatasetManifest SampleManifest(const DatasetManifest& manifest,
                               std::size_t count, std::uint64_t seed);

inline constexpr std::size_t kDefaultPerturbSample = 1000;

// Writes out_root/<i>_<j>/<path>.png for every basis file in `basis_dir`
// and every manifest image, plus out_root/manifest.jsonl. Returns the number
// of images written.
std::size_t PerturbDataset(const DatasetManifest& manifest,
                           const std::filesystem::path& basis_dir,
                           std::uint64_t sign_seed,
                           const std::filesystem::path& out_root);

// Prediction CSV `path,true_label,pred_label`; each path must contain a
// "<i>_<j>" directory component naming the basis.
std::vector<SensitivityRecord> RecordsFromPredictions(std::istream& in);

}  // namespace aprkit

#endif  // APRKIT_DATASET_HPP_
