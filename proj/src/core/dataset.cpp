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

#include "aprkit/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <regex>
#include <set>

#include "aprkit/image_io.hpp"
#include "aprkit/seed.hpp"
#include "aprkit/transforms.hpp"
#include "json.hpp"
#include "text.hpp"

namespace aprkit {
namespace {

namespace fs = std::filesystem;
using OrderedJson = nlohmann::ordered_json;

const std::regex kBasisName(R"((-?\d+)_(-?\d+))");

std::ofstream OpenForWrite(const fs::path& file) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorKind::kIo, "cannot open " + file.string() + " for writing");
  return out;
}

void CreateDirectories(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) Fail(ErrorKind::kIo, "cannot create " + dir.string() + ": " + ec.message());
}

std::string PngPath(const std::string& relative) {
  return fs::path(relative).replace_extension(".png").generic_string();
}

OrderedJson EntryJson(const ManifestEntry& e) {
  return OrderedJson{{"path", e.path}, {"label", e.label}, {"split", e.split}};
}

// Runs `body`, converting filesystem exceptions into kIo errors.
template <typename Fn>
auto WithIoErrors(Fn body) {
  try {
    return body();
  } catch (const fs::filesystem_error& e) {
    Fail(ErrorKind::kIo, e.what());
  }
}

}  // namespace

void ValidateManifest(const DatasetManifest& manifest) {
  std::set<std::string> seen;
  for (const ManifestEntry& e : manifest.entries) {
    if (e.path.empty() || fs::path(e.path).is_absolute()) {
      Fail(ErrorKind::kData, "manifest paths must be relative: '" + e.path + "'");
    }
    if (e.label < 0) Fail(ErrorKind::kData, "negative label for '" + e.path + "'");
    if (!seen.insert(e.path).second) {
      Fail(ErrorKind::kData, "duplicate manifest path '" + e.path + "'");
    }
  }
}

DatasetManifest ReadManifest(const fs::path& file) {
  std::ifstream in(file);
  if (!in) Fail(ErrorKind::kIo, "cannot open manifest " + file.string());
  DatasetManifest manifest;
  manifest.root = file.parent_path().empty() ? fs::path(".") : file.parent_path();
  std::string line;
  std::size_t line_no = 0;
  while (text::NextLine(in, line, line_no)) {
    const std::string where =
        file.string() + ":" + std::to_string(line_no) + ": ";
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      Fail(ErrorKind::kData, where + e.what());
    }
    if (!j.is_object() || !j.contains("path") || !j["path"].is_string() ||
        !j.contains("label") || !j["label"].is_number_integer()) {
      Fail(ErrorKind::kData, where + "expected {\"path\": str, \"label\": int}");
    }
    ManifestEntry e;
    e.path = j["path"].get<std::string>();
    e.label = j["label"].get<std::int64_t>();
    if (j.contains("split")) {
      if (!j["split"].is_string()) Fail(ErrorKind::kData, where + "split must be a string");
      e.split = j["split"].get<std::string>();
    }
    manifest.entries.push_back(std::move(e));
  }
  ValidateManifest(manifest);
  return manifest;
}

void WriteManifest(const DatasetManifest& manifest, const fs::path& file) {
  ValidateManifest(manifest);
  std::ofstream out = OpenForWrite(file);
  for (const ManifestEntry& e : manifest.entries) out << EntryJson(e).dump() << '\n';
  if (!out) Fail(ErrorKind::kIo, "failed writing " + file.string());
}

BatchPlan PlanDatasetBatch(const AprConfig& config, std::size_t batch_index,
                           std::size_t batch_size) {
  AprConfig batch_config = config;
  batch_config.seed = DeriveSeed(config.seed, SeedStream::kBatch, batch_index);
  return PlanBatch(batch_size, batch_config);
}

DatasetManifest AugmentDataset(const DatasetManifest& manifest,
                               const AprConfig& config, const fs::path& out_root,
                               const AugmentOptions& options) {
  ValidateManifest(manifest);
  config.Validate();
  if (options.batch_size == 0) Fail(ErrorKind::kInvalidArgument, "batch size must be positive");
  if (manifest.entries.empty()) Fail(ErrorKind::kData, "manifest has no images");

  CreateDirectories(out_root);
  const fs::path marker = out_root / kIncompleteMarker;
  OpenForWrite(marker) << "running\n";

  try {
    return WithIoErrors([&] {
      DatasetManifest result;
      result.root = out_root;
      std::set<std::string> out_paths;
      for (const ManifestEntry& e : manifest.entries) {
        ManifestEntry out = e;
        out.path = PngPath(e.path);
        if (!out_paths.insert(out.path).second) {
          Fail(ErrorKind::kData, "two inputs map to output '" + out.path + "'");
        }
        result.entries.push_back(std::move(out));
      }

      const std::size_t n = manifest.entries.size();
      for (std::size_t start = 0, batch = 0; start < n;
           start += options.batch_size, ++batch) {
        const std::size_t end = std::min(n, start + options.batch_size);
        std::vector<LabeledImage> samples;
        samples.reserve(end - start);
        for (std::size_t k = start; k < end; ++k) {
          samples.push_back({ReadImage(manifest.root / manifest.entries[k].path),
                             manifest.entries[k].label});
        }
        const BatchPlan plan = PlanDatasetBatch(config, batch, samples.size());
        const std::vector<LabeledImage> augmented =
            ExecutePlan(samples, plan, options.workers);
        for (std::size_t k = start; k < end; ++k) {
          const fs::path target = out_root / result.entries[k].path;
          CreateDirectories(target.parent_path());
          WriteImage(augmented[k - start].image, target);
          result.entries[k].label = augmented[k - start].label;
        }
      }

      WriteManifest(result, out_root / kManifestFileName);
      OrderedJson run = {
          {"mode", AprModeName(config.mode)},
          {"apply_probability", config.apply_probability},
          {"seed", config.seed},
          {"chain_length", {config.chain_length.min, config.chain_length.max}},
          {"batch_size", options.batch_size},
          {"op_registry", OrderedJson::parse(OpRegistryJson())},
      };
      OpenForWrite(out_root / "run.json") << run.dump(2) << '\n';
      fs::remove(marker);
      return result;
    });
  } catch (const std::exception& e) {
    std::ofstream(marker, std::ios::trunc) << "failed: " << e.what() << '\n';
    throw;
  }
}

fs::path WriteBasisFile(const FourierBasisImage& basis, const fs::path& dir) {
  CreateDirectories(dir);
  const std::string stem = std::to_string(basis.i) + "_" + std::to_string(basis.j);
  const fs::path file = dir / (stem + ".csv");
  {
    std::ofstream out = OpenForWrite(file);
    for (std::size_t y = 0; y < basis.image.height(); ++y) {
      for (std::size_t x = 0; x < basis.image.width(); ++x) {
        if (x) out << ',';
        out << text::FormatDouble(basis.image.at(0, y, x));
      }
      out << '\n';
    }
    if (!out) Fail(ErrorKind::kIo, "failed writing " + file.string());
  }
  double peak = 0.0;
  for (double v : basis.image.values()) peak = std::max(peak, std::abs(v));
  RealGrid preview = basis.image;
  for (double& v : preview.values()) v = peak > 0.0 ? 0.5 + v / (2.0 * peak) : 0.5;
  WriteImage(Image::Clamped(std::move(preview)), dir / (stem + ".png"));
  return file;
}

FourierBasisImage ReadBasisFile(const fs::path& file) {
  std::smatch m;
  const std::string stem = file.stem().string();
  if (!std::regex_match(stem, m, kBasisName)) {
    Fail(ErrorKind::kData, file.string() + ": basis files must be named <i>_<j>.csv");
  }
  std::ifstream in(file);
  if (!in) Fail(ErrorKind::kIo, "cannot open " + file.string());
  std::vector<double> values;
  std::size_t width = 0, height = 0;
  std::string line;
  std::size_t line_no = 0;
  while (text::NextLine(in, line, line_no)) {
    const auto fields = text::SplitCsv(line);
    if (width == 0) width = fields.size();
    if (fields.size() != width) Fail(ErrorKind::kData, file.string() + ": ragged rows");
    for (const auto& f : fields) values.push_back(text::ParseDouble(f, line_no));
    ++height;
  }
  if (height == 0) Fail(ErrorKind::kData, file.string() + ": empty basis file");
  FourierBasisImage basis;
  basis.i = std::stoi(m[1].str());
  basis.j = std::stoi(m[2].str());
  basis.image = RealGrid({height, width, 1}, std::move(values));
  double sum_sq = 0.0;
  for (double v : basis.image.values()) sum_sq += v * v;
  basis.l2_norm = std::sqrt(sum_sq);
  if (!(basis.l2_norm > 0.0)) Fail(ErrorKind::kData, file.string() + ": zero basis");
  return basis;
}

DatasetManifest SampleManifest(const DatasetManifest& manifest,
                               std::size_t count, std::uint64_t seed) {
  const std::size_t n = manifest.entries.size();
  if (count == 0 || count >= n) return manifest;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(DeriveSeed(seed, SeedStream::kSubset, 0));
  for (std::size_t k = 0; k < count; ++k) {
    std::swap(order[k], order[k + rng.Below(n - k)]);
  }
  order.resize(count);
  std::sort(order.begin(), order.end());
  DatasetManifest out{manifest.root, {}};
  for (std::size_t k : order) out.entries.push_back(manifest.entries[k]);
  return out;
}

std::size_t PerturbDataset(const DatasetManifest& manifest,
                           const fs::path& basis_dir, std::uint64_t sign_seed,
                           const fs::path& out_root) {
  ValidateManifest(manifest);
  return WithIoErrors([&] {
    std::vector<fs::path> basis_files;
    if (!fs::is_directory(basis_dir)) {
      Fail(ErrorKind::kIo, "basis directory " + basis_dir.string() + " not found");
    }
    for (const auto& entry : fs::directory_iterator(basis_dir)) {
      if (entry.path().extension() == ".csv") basis_files.push_back(entry.path());
    }
    std::sort(basis_files.begin(), basis_files.end());
    if (basis_files.empty()) Fail(ErrorKind::kData, "no basis files in " + basis_dir.string());

    std::vector<Image> images;
    images.reserve(manifest.entries.size());
    for (const ManifestEntry& e : manifest.entries) {
      images.push_back(ReadImage(manifest.root / e.path));
    }

    CreateDirectories(out_root);
    std::ofstream listing = OpenForWrite(out_root / kManifestFileName);
    std::size_t written = 0;
    for (const fs::path& file : basis_files) {
      const FourierBasisImage basis = ReadBasisFile(file);
      const std::vector<Image> perturbed = PerturbImages(images, basis, sign_seed);
      const std::string dir_name = file.stem().string();
      for (std::size_t k = 0; k < perturbed.size(); ++k) {
        const std::string rel = dir_name + "/" + PngPath(manifest.entries[k].path);
        const fs::path target = out_root / rel;
        CreateDirectories(target.parent_path());
        WriteImage(perturbed[k], target);
        OrderedJson line = EntryJson({rel, manifest.entries[k].label,
                                      manifest.entries[k].split});
        line["basis_i"] = basis.i;
        line["basis_j"] = basis.j;
        line["sign"] = PerturbSign(sign_seed, k);
        listing << line.dump() << '\n';
        ++written;
      }
    }
    if (!listing) Fail(ErrorKind::kIo, "failed writing perturbation manifest");
    return written;
  });
}

std::vector<SensitivityRecord> RecordsFromPredictions(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!text::NextLine(in, line, line_no)) Fail(ErrorKind::kData, "empty predictions file");
  if (text::Trim(line) != "path,true_label,pred_label") {
    Fail(ErrorKind::kData, "predictions header must be 'path,true_label,pred_label'");
  }
  std::map<std::pair<int, int>, std::pair<std::int64_t, std::int64_t>> counts;
  while (text::NextLine(in, line, line_no)) {
    const auto f = text::SplitCsv(line);
    if (f.size() != 3) {
      Fail(ErrorKind::kData, "line " + std::to_string(line_no) + ": expected 3 fields");
    }
    std::optional<std::pair<int, int>> offset;
    for (const auto& part : fs::path(f[0])) {
      std::smatch m;
      const std::string s = part.string();
      if (std::regex_match(s, m, kBasisName)) {
        offset = {std::stoi(m[1].str()), std::stoi(m[2].str())};
        break;
      }
    }
    if (!offset) {
      Fail(ErrorKind::kData, "line " + std::to_string(line_no) +
                                 ": path has no <i>_<j> component");
    }
    auto& [total, wrong] = counts[*offset];
    ++total;
    if (text::ParseInt(f[1], line_no) != text::ParseInt(f[2], line_no)) ++wrong;
  }
  std::vector<SensitivityRecord> records;
  for (const auto& [key, value] : counts) {
    records.push_back({key.first, key.second, value.first, value.second});
  }
  return records;
}

}  // namespace aprkit
