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

// aprkit command-line front end. Everything goes through the C API.
//
// Exit codes: 0 success, 2 usage error, 3 data error, 4 I/O error,
// 1 internal failure.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <regex>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aprkit/aprkit_c.h"

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitIo = 4;

// Carries a C API failure up to main().
struct CommandError : std::runtime_error {
  CommandError(aprkit_status s, const std::string& what)
      : std::runtime_error(what), status(s) {}
  aprkit_status status;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void Check(aprkit_status status) {
  if (status != APRKIT_OK) throw CommandError(status, aprkit_last_error());
}

int ExitCodeOf(aprkit_status status) {
  switch (status) {
    case APRKIT_OK:
      return kExitOk;
    case APRKIT_ERR_INVALID_ARGUMENT:
      return kExitUsage;
    case APRKIT_ERR_DIMENSION:
    case APRKIT_ERR_DOMAIN:
    case APRKIT_ERR_DATA:
      return kExitData;
    case APRKIT_ERR_IO:
      return kExitIo;
    case APRKIT_ERR_INTERNAL:
      break;
  }
  return kExitInternal;
}

struct ImageDeleter {
  void operator()(aprkit_image* p) const { aprkit_image_free(p); }
};
using ImagePtr = std::unique_ptr<aprkit_image, ImageDeleter>;

struct ScoresDeleter {
  void operator()(aprkit_scores* p) const { aprkit_scores_free(p); }
};
using ScoresPtr = std::unique_ptr<aprkit_scores, ScoresDeleter>;

struct ReportDeleter {
  void operator()(aprkit_corruption_report* p) const {
    aprkit_corruption_report_free(p);
  }
};
using ReportPtr = std::unique_ptr<aprkit_corruption_report, ReportDeleter>;

ImagePtr Read(const std::string& path) {
  aprkit_image* raw = nullptr;
  Check(aprkit_image_read(path.c_str(), &raw));
  return ImagePtr(raw);
}

void Write(const aprkit_image* image, const fs::path& path) {
  Check(aprkit_image_write(image, path.c_str()));
}

void MakeDirectory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw CommandError(APRKIT_ERR_IO,
                       "cannot create " + dir.string() + ": " + ec.message());
  }
}

// "HxW" or a single side length.
std::pair<std::size_t, std::size_t> ParseSize(const std::string& text) {
  static const std::regex kPattern(R"((\d+)(?:[xX](\d+))?)");
  std::smatch m;
  if (!std::regex_match(text, m, kPattern)) {
    throw UsageError("--size must look like HxW or N, got '" + text + "'");
  }
  const std::size_t h = std::stoul(m[1].str());
  const std::size_t w = m[2].matched ? std::stoul(m[2].str()) : h;
  if (h == 0 || w == 0) throw UsageError("--size must be positive");
  return {h, w};
}

void PrintValue(const char* name, double value) {
  std::printf("%s,%.10g\n", name, value);
}

// ---- commands --------------------------------------------------------------

struct DecomposeArgs {
  std::string input, amp, phase;
};

void RunDecompose(const DecomposeArgs& a) {
  const ImagePtr image = Read(a.input);
  aprkit_image* amp = nullptr;
  aprkit_image* phase = nullptr;
  Check(aprkit_render_spectrum(image.get(), &amp, &phase));
  const ImagePtr amp_owner(amp), phase_owner(phase);
  Write(amp, a.amp);
  Write(phase, a.phase);
}

struct SwapArgs {
  std::string phase_src, amp_src, output;
};

void RunSwap(const SwapArgs& a) {
  const ImagePtr phase = Read(a.phase_src);
  const ImagePtr amp = Read(a.amp_src);
  aprkit_image* out = nullptr;
  Check(aprkit_apr_pair(phase.get(), amp.get(), &out));
  const ImagePtr owner(out);
  Write(out, a.output);
}

struct GridArgs {
  std::string input, out_dir;
  std::size_t size = 32;
};

void RunGrid(const GridArgs& a) {
  if (a.size == 0) throw UsageError("--size must be positive");
  ImagePtr image = Read(a.input);
  if (aprkit_image_height(image.get()) != a.size ||
      aprkit_image_width(image.get()) != a.size) {
    aprkit_image* resized = nullptr;
    Check(aprkit_image_resize(image.get(), a.size, a.size, &resized));
    image.reset(resized);
  }
  MakeDirectory(a.out_dir);
  const aprkit_band bands[] = {APRKIT_BAND_LOW, APRKIT_BAND_INTERMEDIATE,
                               APRKIT_BAND_HIGH, APRKIT_BAND_FULL};
  for (aprkit_band amp_band : bands) {
    for (aprkit_band phase_band : bands) {
      aprkit_image* out = nullptr;
      Check(aprkit_compose_bands(image.get(), amp_band, image.get(),
                                 phase_band, &out));
      const ImagePtr owner(out);
      const std::string name = std::string("amp-") + aprkit_band_name(amp_band) +
                               "_phase-" + aprkit_band_name(phase_band) + ".png";
      Write(out, fs::path(a.out_dir) / name);
    }
  }
}

struct AugmentArgs {
  std::string manifest, mode = "p", out_dir;
  std::uint64_t seed = 0;
  double prob = 1.0;
  std::size_t batch_size = 128;
  std::size_t workers = 1;
};

void RunAugment(const AugmentArgs& a) {
  static const std::map<std::string, aprkit_mode> kModes = {
      {"p", APRKIT_MODE_PAIR},
      {"s", APRKIT_MODE_SINGLE},
      {"sp", APRKIT_MODE_SINGLE_PAIR}};
  aprkit_apr_config config;
  aprkit_apr_config_init(&config);
  config.mode = kModes.at(a.mode);
  config.seed = a.seed;
  config.apply_probability = a.prob;
  std::size_t written = 0;
  Check(aprkit_augment_dataset(a.manifest.c_str(), &config, a.out_dir.c_str(),
                               a.batch_size, a.workers, &written));
  std::printf("wrote %zu images to %s\n", written, a.out_dir.c_str());
}

struct TemplatesArgs {
  std::size_t size = 8, u = 0, v = 0;
  std::string out_dir;
};

void RunTemplates(const TemplatesArgs& a) {
  aprkit_image* raw[4] = {};
  Check(aprkit_templates(a.size, a.u, a.v, raw));
  const ImagePtr owners[4] = {ImagePtr(raw[0]), ImagePtr(raw[1]),
                              ImagePtr(raw[2]), ImagePtr(raw[3])};
  MakeDirectory(a.out_dir);
  const char* names[4] = {"real_plus.png", "real_minus.png", "imag_plus.png",
                          "imag_minus.png"};
  for (int k = 0; k < 4; ++k) Write(raw[k], fs::path(a.out_dir) / names[k]);
}

struct BasisArgs {
  std::string out_dir, size = "32x32";
  double norm = 15.0;
  std::optional<int> i, j;
  bool all = false;
};

void RunBasis(const BasisArgs& a) {
  const auto [h, w] = ParseSize(a.size);
  if (a.all == (a.i.has_value() || a.j.has_value())) {
    throw UsageError("basis needs either --all or both --i and --j");
  }
  if (!a.all && !(a.i && a.j)) throw UsageError("basis needs both --i and --j");
  if (a.all) {
    for (int i = -16; i <= 16; ++i)
      for (int j = -16; j <= 16; ++j)
        Check(aprkit_write_basis(a.out_dir.c_str(), h, w, i, j, a.norm));
  } else {
    Check(aprkit_write_basis(a.out_dir.c_str(), h, w, *a.i, *a.j, a.norm));
  }
}

struct PerturbArgs {
  std::string manifest, basis_dir, out_dir;
  std::uint64_t seed = 0;
  std::size_t sample = 1000;
};

void RunPerturb(const PerturbArgs& a) {
  std::size_t written = 0;
  Check(aprkit_perturb_dataset(a.manifest.c_str(), a.basis_dir.c_str(), a.seed,
                               a.sample, a.out_dir.c_str(), &written));
  std::printf("wrote %zu images to %s\n", written, a.out_dir.c_str());
}

struct HeatmapArgs {
  std::string records, predictions, output, png;
};

void RunHeatmap(const HeatmapArgs& a) {
  if (a.records.empty() == a.predictions.empty()) {
    throw UsageError("heatmap needs exactly one of --records or --predictions");
  }
  const bool from_predictions = !a.predictions.empty();
  const std::string& input = from_predictions ? a.predictions : a.records;
  std::size_t missing = 0;
  Check(aprkit_heatmap(input.c_str(), from_predictions ? 1 : 0,
                       a.output.c_str(), a.png.empty() ? nullptr : a.png.c_str(),
                       &missing));
  if (missing > 0) {
    std::fprintf(stderr, "warning: %zu of 1089 offsets have no data\n", missing);
  }
}

struct MetricsArgs {
  std::string errors, reference;
  std::string scores;
  std::optional<double> threshold;
  std::string phase, amp, output;
  double lambda = 0.5;
};

ScoresPtr ReadScores(const std::string& path) {
  aprkit_scores* raw = nullptr;
  Check(aprkit_scores_read(path.c_str(), &raw));
  return ScoresPtr(raw);
}

void RunMce(const MetricsArgs& a) {
  aprkit_corruption_report* raw = nullptr;
  Check(aprkit_corruption_report_read(a.errors.c_str(), a.reference.c_str(),
                                      &raw));
  const ReportPtr report(raw);
  std::printf("corruption,ce\n");
  for (std::size_t k = 0; k < aprkit_corruption_report_count(raw); ++k) {
    std::printf("%s,%.10g\n", aprkit_corruption_report_name(raw, k),
                aprkit_corruption_report_ce(raw, k));
  }
  PrintValue("mCE", aprkit_corruption_report_mce(raw));
}

void RunAuroc(const MetricsArgs& a) {
  const ScoresPtr scores = ReadScores(a.scores);
  double value = 0.0;
  Check(aprkit_scores_auroc(scores.get(), &value));
  PrintValue("auroc", value);
}

void RunOscr(const MetricsArgs& a) {
  const ScoresPtr scores = ReadScores(a.scores);
  double value = 0.0;
  Check(aprkit_scores_oscr(scores.get(), &value));
  PrintValue("oscr", value);
  if (a.threshold) {
    double ccr = 0.0, fpr = 0.0;
    Check(aprkit_scores_ccr_fpr(scores.get(), *a.threshold, &ccr, &fpr));
    PrintValue("ccr", ccr);
    PrintValue("fpr", fpr);
  }
}

void RunBlend(const MetricsArgs& a) {
  const ScoresPtr phase = ReadScores(a.phase);
  const ScoresPtr amp = ReadScores(a.amp);
  Check(aprkit_scores_blend_write(phase.get(), amp.get(), a.lambda,
                                  a.output.c_str()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Amplitude-phase recombination toolkit"};
  app.set_version_flag("--version", std::string(aprkit_version()));
  app.require_subcommand(1);

  DecomposeArgs decompose;
  auto* cmd = app.add_subcommand("decompose", "Render log-amplitude and phase");
  cmd->add_option("input", decompose.input, "Input image")->required();
  cmd->add_option("--amp", decompose.amp, "Log-amplitude output")->required();
  cmd->add_option("--phase", decompose.phase, "Phase output")->required();
  cmd->callback([&] { RunDecompose(decompose); });

  SwapArgs swap;
  cmd = app.add_subcommand("swap", "Phase of one image with the amplitude of another");
  cmd->add_option("phase-src", swap.phase_src, "Phase source")->required();
  cmd->add_option("amp-src", swap.amp_src, "Amplitude source")->required();
  cmd->add_option("-o,--output", swap.output, "Output image")->required();
  cmd->callback([&] { RunSwap(swap); });

  GridArgs grid;
  cmd = app.add_subcommand("grid", "All 16 amplitude/phase band combinations");
  cmd->add_option("input", grid.input, "Input image")->required();
  cmd->add_option("-o,--output", grid.out_dir, "Output directory")->required();
  cmd->add_option("--size", grid.size, "Side length the input is resized to")
      ->capture_default_str();
  cmd->callback([&] { RunGrid(grid); });

  AugmentArgs augment;
  cmd = app.add_subcommand("augment", "Recombine a dataset described by a manifest");
  cmd->add_option("--manifest", augment.manifest, "Input manifest.jsonl")->required();
  cmd->add_option("--mode", augment.mode, "p, s or sp")
      ->check(CLI::IsMember({"p", "s", "sp"}))
      ->capture_default_str();
  cmd->add_option("--seed", augment.seed, "Base seed")->capture_default_str();
  cmd->add_option("--prob", augment.prob, "Apply probability")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("-o,--output", augment.out_dir, "Output directory")->required();
  cmd->add_option("--batch-size", augment.batch_size, "Pairing batch size")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--workers", augment.workers, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->callback([&] { RunAugment(augment); });

  TemplatesArgs templates;
  cmd = app.add_subcommand("templates", "Render the four templates of a frequency");
  cmd->add_option("--size", templates.size, "Grid side")->required();
  cmd->add_option("--u", templates.u, "Row frequency")->required();
  cmd->add_option("--v", templates.v, "Column frequency")->required();
  cmd->add_option("-o,--output", templates.out_dir, "Output directory")->required();
  cmd->callback([&] { RunTemplates(templates); });

  BasisArgs basis;
  cmd = app.add_subcommand("basis", "Generate Fourier basis images");
  cmd->add_option("-o,--output", basis.out_dir, "Output directory")->required();
  cmd->add_option("--size", basis.size, "HxW")->capture_default_str();
  cmd->add_option("--norm", basis.norm, "L2 norm")->capture_default_str();
  cmd->add_option("--i", basis.i, "Row offset in [-16, 16]");
  cmd->add_option("--j", basis.j, "Column offset in [-16, 16]");
  cmd->add_flag("--all", basis.all, "All 33 x 33 offsets");
  cmd->callback([&] { RunBasis(basis); });

  PerturbArgs perturb;
  cmd = app.add_subcommand("perturb", "Add basis perturbations to a dataset");
  cmd->add_option("--manifest", perturb.manifest, "Input manifest.jsonl")->required();
  cmd->add_option("--basis-dir", perturb.basis_dir, "Directory of <i>_<j>.csv files")
      ->required();
  cmd->add_option("--seed", perturb.seed, "Seed for signs and image sampling")
      ->capture_default_str();
  cmd->add_option("--sample", perturb.sample, "Images to sample, 0 for all")
      ->capture_default_str();
  cmd->add_option("-o,--output", perturb.out_dir, "Output directory")->required();
  cmd->callback([&] { RunPerturb(perturb); });

  HeatmapArgs heatmap;
  cmd = app.add_subcommand("heatmap", "Aggregate error rates into a 33 x 33 heatmap");
  cmd->add_option("--records", heatmap.records, "i,j,n_total,n_wrong CSV");
  cmd->add_option("--predictions", heatmap.predictions,
                  "path,true_label,pred_label CSV");
  cmd->add_option("-o,--output", heatmap.output, "Heatmap CSV")->required();
  cmd->add_option("--png", heatmap.png, "Grayscale render");
  cmd->callback([&] { RunHeatmap(heatmap); });

  MetricsArgs metrics;
  auto* metrics_cmd = app.add_subcommand("metrics", "Robustness metrics");
  metrics_cmd->require_subcommand(1);
  cmd = metrics_cmd->add_subcommand("mce", "Corruption errors and their mean");
  cmd->add_option("--errors", metrics.errors, "Model corruption table")->required();
  cmd->add_option("--reference", metrics.reference, "Reference corruption table")
      ->required();
  cmd->callback([&] { RunMce(metrics); });
  cmd = metrics_cmd->add_subcommand("auroc", "AUROC of max-probability scores");
  cmd->add_option("--scores", metrics.scores, "Score CSV")->required();
  cmd->callback([&] { RunAuroc(metrics); });
  cmd = metrics_cmd->add_subcommand("oscr", "Open-set classification rate");
  cmd->add_option("--scores", metrics.scores, "Score CSV")->required();
  cmd->add_option("--threshold", metrics.threshold, "Also report CCR/FPR here");
  cmd->callback([&] { RunOscr(metrics); });
  cmd = metrics_cmd->add_subcommand("blend", "Blend phase and amplitude predictions");
  cmd->add_option("--phase", metrics.phase, "Phase-model score CSV")->required();
  cmd->add_option("--amp", metrics.amp, "Amplitude-model score CSV")->required();
  cmd->add_option("--lambda", metrics.lambda, "Weight of the phase model")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("-o,--output", metrics.output, "Blended score CSV")->required();
  cmd->callback([&] { RunBlend(metrics); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CommandError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ExitCodeOf(e.status);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}
