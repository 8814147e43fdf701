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

#include "aprkit/aprkit_c.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <exception>
#include <fstream>
#include <map>
#include <new>
#include <span>
#include <string>
#include <vector>

#include "aprkit/augment.hpp"
#include "aprkit/dataset.hpp"
#include "aprkit/filters.hpp"
#include "aprkit/image_io.hpp"
#include "aprkit/metrics.hpp"
#include "aprkit/seed.hpp"
#include "aprkit/sensitivity.hpp"
#include "aprkit/spectral.hpp"
#include "aprkit/templates.hpp"
#include "aprkit/transforms.hpp"

struct aprkit_image {
  aprkit::Image image;
};

struct aprkit_scores {
  std::vector<aprkit::ScoredRecord> records;
};

struct aprkit_corruption_report {
  aprkit::CorruptionReport report;
};

namespace {

thread_local std::string g_last_error;

aprkit_status StatusOf(aprkit::ErrorKind kind) {
  switch (kind) {
    case aprkit::ErrorKind::kInvalidArgument:
      return APRKIT_ERR_INVALID_ARGUMENT;
    case aprkit::ErrorKind::kDimension:
      return APRKIT_ERR_DIMENSION;
    case aprkit::ErrorKind::kDomain:
      return APRKIT_ERR_DOMAIN;
    case aprkit::ErrorKind::kData:
      return APRKIT_ERR_DATA;
    case aprkit::ErrorKind::kIo:
      return APRKIT_ERR_IO;
  }
  return APRKIT_ERR_INTERNAL;
}

aprkit_status Report(aprkit_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
aprkit_status Guarded(Fn&& fn) {
  g_last_error.clear();
  try {
    fn();
    return APRKIT_OK;
  } catch (const aprkit::Error& e) {
    return Report(StatusOf(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return Report(APRKIT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Report(APRKIT_ERR_INTERNAL, e.what());
  } catch (...) {
    return Report(APRKIT_ERR_INTERNAL, "unknown error");
  }
}

void Require(bool ok, const char* what) {
  if (!ok) aprkit::Fail(aprkit::ErrorKind::kInvalidArgument, what);
}

aprkit_image* Wrap(aprkit::Image image) {
  return new aprkit_image{std::move(image)};
}

aprkit::Band ToBand(aprkit_band band) {
  switch (band) {
    case APRKIT_BAND_LOW:
      return aprkit::Band::kLow;
    case APRKIT_BAND_INTERMEDIATE:
      return aprkit::Band::kIntermediate;
    case APRKIT_BAND_HIGH:
      return aprkit::Band::kHigh;
    case APRKIT_BAND_FULL:
      return aprkit::Band::kFull;
  }
  aprkit::Fail(aprkit::ErrorKind::kInvalidArgument, "unknown band");
}

aprkit::AprConfig ToConfig(const aprkit_apr_config* config) {
  Require(config != nullptr, "config is null");
  aprkit::AprConfig out;
  switch (config->mode) {
    case APRKIT_MODE_PAIR:
      out.mode = aprkit::AprMode::kPair;
      break;
    case APRKIT_MODE_SINGLE:
      out.mode = aprkit::AprMode::kSingle;
      break;
    case APRKIT_MODE_SINGLE_PAIR:
      out.mode = aprkit::AprMode::kSinglePair;
      break;
    default:
      aprkit::Fail(aprkit::ErrorKind::kInvalidArgument, "unknown mode");
  }
  out.apply_probability = config->apply_probability;
  out.seed = config->seed;
  out.chain_length = {config->chain_length_min, config->chain_length_max};
  out.Validate();
  return out;
}

// Views sample k of an (n, c, h, w) buffer as an image.
aprkit::Image SampleAt(const double* data, std::size_t k,
                       const aprkit::Shape& shape) {
  const double* begin = data + k * shape.size();
  return aprkit::Image(aprkit::RealGrid(
      shape, std::vector<double>(begin, begin + shape.size())));
}

aprkit::Shape BatchShape(std::size_t channels, std::size_t height,
                         std::size_t width) {
  const aprkit::Shape shape{height, width, channels};
  if (shape.size() == 0) {
    aprkit::Fail(aprkit::ErrorKind::kDimension,
                 "zero-sized sample " + shape.ToString());
  }
  return shape;
}

std::ifstream OpenInput(const char* path) {
  Require(path != nullptr, "path is null");
  std::ifstream in(path);
  if (!in) aprkit::Fail(aprkit::ErrorKind::kIo, std::string("cannot open ") + path);
  return in;
}

std::ofstream OpenOutput(const char* path) {
  Require(path != nullptr, "path is null");
  std::ofstream out(path);
  if (!out) {
    aprkit::Fail(aprkit::ErrorKind::kIo,
                 std::string("cannot open ") + path + " for writing");
  }
  return out;
}

}  // namespace

extern "C" {

const char* aprkit_version(void) { return "1.0.0"; }

const char* aprkit_last_error(void) { return g_last_error.c_str(); }

const char* aprkit_status_name(aprkit_status status) {
  switch (status) {
    case APRKIT_OK:
      return "ok";
    case APRKIT_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case APRKIT_ERR_DIMENSION:
      return "dimension mismatch";
    case APRKIT_ERR_DOMAIN:
      return "domain error";
    case APRKIT_ERR_DATA:
      return "data error";
    case APRKIT_ERR_IO:
      return "i/o error";
    case APRKIT_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

void aprkit_apr_config_init(aprkit_apr_config* config) {
  if (config == nullptr) return;
  config->mode = APRKIT_MODE_PAIR;
  config->apply_probability = 1.0;
  config->seed = 0;
  config->chain_length_min = 1;
  config->chain_length_max = 3;
}

uint64_t aprkit_derive_seed(uint64_t base, uint64_t stream, uint64_t index) {
  return aprkit::DeriveSeed(base, static_cast<aprkit::SeedStream>(stream),
                            index);
}

size_t aprkit_op_registry_json(char* buf, size_t capacity) {
  static const std::string json = aprkit::OpRegistryJson();
  if (buf != nullptr && capacity > 0) {
    const std::size_t n = std::min(json.size(), capacity - 1);
    std::memcpy(buf, json.data(), n);
    buf[n] = '\0';
  }
  return json.size();
}

aprkit_status aprkit_image_create(size_t height, size_t width, size_t channels,
                                  const double* planar, aprkit_image** out) {
  return Guarded([&] {
    Require(planar != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    const aprkit::Shape shape{height, width, channels};
    *out = Wrap(aprkit::Image(aprkit::RealGrid(
        shape, std::vector<double>(planar, planar + shape.size()))));
  });
}

aprkit_status aprkit_image_read(const char* path, aprkit_image** out) {
  return Guarded([&] {
    Require(path != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    *out = Wrap(aprkit::ReadImage(path));
  });
}

aprkit_status aprkit_image_write(const aprkit_image* image, const char* path) {
  return Guarded([&] {
    Require(image != nullptr && path != nullptr, "null argument");
    aprkit::WriteImage(image->image, path);
  });
}

void aprkit_image_free(aprkit_image* image) { delete image; }

size_t aprkit_image_height(const aprkit_image* image) {
  return image ? image->image.height() : 0;
}

size_t aprkit_image_width(const aprkit_image* image) {
  return image ? image->image.width() : 0;
}

size_t aprkit_image_channels(const aprkit_image* image) {
  return image ? image->image.channels() : 0;
}

aprkit_status aprkit_image_copy(const aprkit_image* image, double* out,
                                size_t count) {
  return Guarded([&] {
    Require(image != nullptr && out != nullptr, "null argument");
    const auto values = image->image.values();
    if (count != values.size()) {
      aprkit::Fail(aprkit::ErrorKind::kDimension,
                   "buffer holds " + std::to_string(count) + " values, image has " +
                       std::to_string(values.size()));
    }
    std::copy(values.begin(), values.end(), out);
  });
}

aprkit_status aprkit_image_resize(const aprkit_image* image, size_t height,
                                  size_t width, aprkit_image** out) {
  return Guarded([&] {
    Require(image != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    *out = Wrap(aprkit::ResizeBilinear(image->image, height, width));
  });
}

aprkit_status aprkit_apr_pair(const aprkit_image* phase_src,
                              const aprkit_image* amp_src, aprkit_image** out) {
  return Guarded([&] {
    Require(phase_src && amp_src && out, "null argument");
    *out = nullptr;
    *out = Wrap(aprkit::AprPair(phase_src->image, amp_src->image));
  });
}

aprkit_status aprkit_render_spectrum(const aprkit_image* image,
                                     aprkit_image** log_amplitude,
                                     aprkit_image** phase) {
  return Guarded([&] {
    Require(image && log_amplitude && phase, "null argument");
    *log_amplitude = nullptr;
    *phase = nullptr;
    const aprkit::PolarSpectrum polar =
        aprkit::Decompose(aprkit::ForwardDft(image->image));
    aprkit::Image amp = aprkit::RenderLogAmplitude(polar);
    aprkit::Image ph = aprkit::RenderPhase(polar);
    *log_amplitude = Wrap(std::move(amp));
    *phase = Wrap(std::move(ph));
  });
}

aprkit_status aprkit_compose_bands(const aprkit_image* amp_src,
                                   aprkit_band amp_band,
                                   const aprkit_image* phase_src,
                                   aprkit_band phase_band, aprkit_image** out) {
  return Guarded([&] {
    Require(amp_src && phase_src && out, "null argument");
    *out = nullptr;
    *out = Wrap(aprkit::ComposeBandPair(amp_src->image, ToBand(amp_band),
                                        phase_src->image, ToBand(phase_band)));
  });
}

const char* aprkit_band_name(aprkit_band band) {
  switch (band) {
    case APRKIT_BAND_LOW:
      return "low";
    case APRKIT_BAND_INTERMEDIATE:
      return "intermediate";
    case APRKIT_BAND_HIGH:
      return "high";
    case APRKIT_BAND_FULL:
      return "full";
  }
  return "unknown";
}

aprkit_status aprkit_templates(size_t size, size_t u, size_t v,
                               aprkit_image* out[4]) {
  return Guarded([&] {
    Require(out != nullptr, "null argument");
    std::fill(out, out + 4, nullptr);
    const aprkit::TemplateSet t = aprkit::TemplatesAt(size, u, v);
    const aprkit::RealGrid* grids[4] = {&t.real_plus, &t.real_minus,
                                        &t.imag_plus, &t.imag_minus};
    std::vector<aprkit::Image> images;
    for (const aprkit::RealGrid* g : grids) images.emplace_back(*g);
    for (int k = 0; k < 4; ++k) out[k] = Wrap(std::move(images[k]));
  });
}

aprkit_status aprkit_apr_pair_batch(const double* phase, const double* amp,
                                    size_t n, size_t channels, size_t height,
                                    size_t width, double* out) {
  return Guarded([&] {
    Require(phase && amp && out, "null argument");
    const aprkit::Shape shape = BatchShape(channels, height, width);
    for (std::size_t k = 0; k < n; ++k) {
      const aprkit::Image mixed =
          aprkit::AprPair(SampleAt(phase, k, shape), SampleAt(amp, k, shape));
      std::copy(mixed.values().begin(), mixed.values().end(),
                out + k * shape.size());
    }
  });
}

aprkit_status aprkit_apr_batch(const double* in, const int64_t* labels,
                               size_t n, size_t channels, size_t height,
                               size_t width, const aprkit_apr_config* config,
                               size_t workers, double* out,
                               int64_t* out_labels) {
  return Guarded([&] {
    Require(in && labels && out && out_labels, "null argument");
    const aprkit::AprConfig cfg = ToConfig(config);
    const aprkit::Shape shape = BatchShape(channels, height, width);
    std::vector<aprkit::LabeledImage> batch;
    batch.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      batch.push_back({SampleAt(in, k, shape), labels[k]});
    }
    const std::vector<aprkit::LabeledImage> result =
        aprkit::AprBatch(batch, cfg, workers == 0 ? 1 : workers);
    for (std::size_t k = 0; k < n; ++k) {
      const auto values = result[k].image.values();
      std::copy(values.begin(), values.end(), out + k * shape.size());
      out_labels[k] = result[k].label;
    }
  });
}

aprkit_status aprkit_augment_dataset(const char* manifest_path,
                                     const aprkit_apr_config* config,
                                     const char* out_dir, size_t batch_size,
                                     size_t workers, size_t* images_written) {
  return Guarded([&] {
    Require(manifest_path && out_dir, "null argument");
    const aprkit::AprConfig cfg = ToConfig(config);
    aprkit::AugmentOptions options;
    if (batch_size != 0) options.batch_size = batch_size;
    options.workers = workers == 0 ? 1 : workers;
    const aprkit::DatasetManifest written = aprkit::AugmentDataset(
        aprkit::ReadManifest(manifest_path), cfg, out_dir, options);
    if (images_written) *images_written = written.entries.size();
  });
}

aprkit_status aprkit_write_basis(const char* out_dir, size_t height,
                                 size_t width, int i, int j, double norm) {
  return Guarded([&] {
    Require(out_dir != nullptr, "null argument");
    aprkit::WriteBasisFile(aprkit::MakeFourierBasis(height, width, i, j, norm),
                           out_dir);
  });
}

aprkit_status aprkit_perturb_dataset(const char* manifest_path,
                                     const char* basis_dir, uint64_t seed,
                                     size_t sample_count, const char* out_dir,
                                     size_t* images_written) {
  return Guarded([&] {
    Require(manifest_path && basis_dir && out_dir, "null argument");
    const aprkit::DatasetManifest subset = aprkit::SampleManifest(
        aprkit::ReadManifest(manifest_path), sample_count, seed);
    const std::size_t n =
        aprkit::PerturbDataset(subset, basis_dir, seed, out_dir);
    if (images_written) *images_written = n;
  });
}

aprkit_status aprkit_heatmap(const char* input_csv, int from_predictions,
                             const char* out_csv, const char* png_path,
                             size_t* missing_cells) {
  return Guarded([&] {
    std::ifstream in = OpenInput(input_csv);
    const std::vector<aprkit::SensitivityRecord> records =
        from_predictions ? aprkit::RecordsFromPredictions(in)
                         : aprkit::ReadSensitivityRecords(in);
    const aprkit::SensitivityHeatmap heatmap = aprkit::AggregateHeatmap(records);
    std::ofstream out = OpenOutput(out_csv);
    aprkit::WriteHeatmapCsv(out, heatmap);
    out.close();
    if (!out) aprkit::Fail(aprkit::ErrorKind::kIo, std::string("failed writing ") + out_csv);
    if (png_path != nullptr) {
      aprkit::WriteImage(aprkit::HeatmapImage(heatmap), png_path);
    }
    if (missing_cells) *missing_cells = heatmap.missing.size();
  });
}

aprkit_status aprkit_corruption_error(const double errors[5],
                                      const double reference[5], double* out) {
  return Guarded([&] {
    Require(errors && reference && out, "null argument");
    *out = aprkit::CorruptionError(
        std::span<const double>(errors, aprkit::kSeverityCount),
        std::span<const double>(reference, aprkit::kSeverityCount));
  });
}

aprkit_status aprkit_mean_corruption_error(const double* ce, size_t count,
                                           double* out) {
  return Guarded([&] {
    Require(out != nullptr && (ce != nullptr || count == 0), "null argument");
    *out = aprkit::MeanCorruptionError(std::span<const double>(ce, count));
  });
}

aprkit_status aprkit_auroc(const double* in_scores, size_t n_in,
                           const double* out_scores, size_t n_out,
                           double* out) {
  return Guarded([&] {
    Require(out != nullptr && (in_scores || n_in == 0) &&
                (out_scores || n_out == 0),
            "null argument");
    *out = aprkit::Auroc(std::span<const double>(in_scores, n_in),
                         std::span<const double>(out_scores, n_out));
  });
}

aprkit_status aprkit_blend(const double* p_phase, const double* p_amp,
                           size_t count, double lambda, double* out) {
  return Guarded([&] {
    Require(p_phase && p_amp && out, "null argument");
    const std::vector<double> mixed =
        aprkit::BlendPredictions(std::span<const double>(p_phase, count),
                                 std::span<const double>(p_amp, count), lambda);
    std::copy(mixed.begin(), mixed.end(), out);
  });
}

aprkit_status aprkit_corruption_report_read(const char* errors_csv,
                                            const char* reference_csv,
                                            aprkit_corruption_report** out) {
  return Guarded([&] {
    Require(out != nullptr, "null argument");
    *out = nullptr;
    std::ifstream err_in = OpenInput(errors_csv);
    std::ifstream ref_in = OpenInput(reference_csv);
    const aprkit::CorruptionTable errors = aprkit::ReadCorruptionTable(err_in);
    const aprkit::CorruptionTable reference = aprkit::ReadCorruptionTable(ref_in);
    *out = new aprkit_corruption_report{
        aprkit::EvaluateCorruption(errors, reference)};
  });
}

void aprkit_corruption_report_free(aprkit_corruption_report* r) { delete r; }

size_t aprkit_corruption_report_count(const aprkit_corruption_report* r) {
  return r ? r->report.ce.size() : 0;
}

const char* aprkit_corruption_report_name(const aprkit_corruption_report* r,
                                          size_t index) {
  if (!r || index >= r->report.ce.size()) return nullptr;
  return r->report.ce[index].first.c_str();
}

double aprkit_corruption_report_ce(const aprkit_corruption_report* r,
                                   size_t index) {
  if (!r || index >= r->report.ce.size()) return std::nan("");
  return r->report.ce[index].second;
}

double aprkit_corruption_report_mce(const aprkit_corruption_report* r) {
  return r ? r->report.mce : std::nan("");
}

aprkit_status aprkit_scores_read(const char* path, aprkit_scores** out) {
  return Guarded([&] {
    Require(out != nullptr, "null argument");
    *out = nullptr;
    std::ifstream in = OpenInput(path);
    *out = new aprkit_scores{aprkit::ReadScoredRecords(in)};
  });
}

void aprkit_scores_free(aprkit_scores* scores) { delete scores; }

size_t aprkit_scores_count(const aprkit_scores* scores) {
  return scores ? scores->records.size() : 0;
}

aprkit_status aprkit_scores_auroc(const aprkit_scores* scores, double* out) {
  return Guarded([&] {
    Require(scores && out, "null argument");
    *out = aprkit::AurocFromRecords(scores->records);
  });
}

aprkit_status aprkit_scores_oscr(const aprkit_scores* scores, double* out) {
  return Guarded([&] {
    Require(scores && out, "null argument");
    *out = aprkit::Oscr(scores->records);
  });
}

aprkit_status aprkit_scores_ccr_fpr(const aprkit_scores* scores,
                                    double threshold, double* ccr,
                                    double* fpr) {
  return Guarded([&] {
    Require(scores && ccr && fpr, "null argument");
    const aprkit::CcrFpr r = aprkit::CcrFprAt(scores->records, threshold);
    *ccr = r.ccr;
    *fpr = r.fpr;
  });
}

aprkit_status aprkit_scores_blend_write(const aprkit_scores* phase,
                                        const aprkit_scores* amp,
                                        double lambda, const char* out_csv) {
  return Guarded([&] {
    Require(phase && amp, "null argument");
    std::map<std::string, const aprkit::ScoredRecord*> by_id;
    for (const aprkit::ScoredRecord& r : amp->records) by_id[r.id] = &r;
    if (by_id.size() != phase->records.size() ||
        amp->records.size() != phase->records.size()) {
      aprkit::Fail(aprkit::ErrorKind::kData,
                   "score files hold different record sets");
    }
    std::vector<aprkit::ScoredRecord> blended;
    blended.reserve(phase->records.size());
    for (const aprkit::ScoredRecord& p : phase->records) {
      const auto it = by_id.find(p.id);
      if (it == by_id.end()) {
        aprkit::Fail(aprkit::ErrorKind::kData, "id " + p.id + " missing from amplitude scores");
      }
      const aprkit::ScoredRecord& a = *it->second;
      if (p.probabilities.empty() || a.probabilities.empty()) {
        aprkit::Fail(aprkit::ErrorKind::kData,
                     "blending needs per-class probabilities");
      }
      if (p.true_label != a.true_label) {
        aprkit::Fail(aprkit::ErrorKind::kData, "id " + p.id + " has conflicting labels");
      }
      blended.push_back(aprkit::RecordFromProbabilities(
          p.id, p.true_label,
          aprkit::BlendPredictions(p.probabilities, a.probabilities, lambda)));
    }
    std::ofstream out = OpenOutput(out_csv);
    aprkit::WriteProbabilityRecords(out, blended);
    out.close();
    if (!out) aprkit::Fail(aprkit::ErrorKind::kIo, std::string("failed writing ") + out_csv);
  });
}

}  // extern "C"
