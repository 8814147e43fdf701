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

// Exercises the shared library through its C header only.

#include "aprkit/aprkit_c.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "test_util.hpp"

namespace {

namespace fs = std::filesystem;

std::vector<double> RandomPixels(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = d(gen);
  return v;
}

TEST(CApi, VersionStatusAndSeeds) {
  EXPECT_STREQ(aprkit_version(), "1.0.0");
  EXPECT_STREQ(aprkit_status_name(APRKIT_ERR_IO), "i/o error");
  EXPECT_EQ(aprkit_derive_seed(1, APRKIT_SEED_STREAM_SAMPLE, 3),
            aprkit_derive_seed(1, APRKIT_SEED_STREAM_SAMPLE, 3));
  EXPECT_NE(aprkit_derive_seed(1, APRKIT_SEED_STREAM_SAMPLE, 3),
            aprkit_derive_seed(1, APRKIT_SEED_STREAM_PERMUTATION, 3));
  aprkit_apr_config c;
  aprkit_apr_config_init(&c);
  EXPECT_EQ(c.mode, APRKIT_MODE_PAIR);
  EXPECT_EQ(c.apply_probability, 1.0);
  EXPECT_EQ(c.chain_length_min, 1);
  EXPECT_EQ(c.chain_length_max, 3);
}

TEST(CApi, OpRegistryJsonTruncatesSafely) {
  const std::size_t n = aprkit_op_registry_json(nullptr, 0);
  ASSERT_GT(n, 100u);
  std::vector<char> buf(n + 1);
  EXPECT_EQ(aprkit_op_registry_json(buf.data(), buf.size()), n);
  EXPECT_EQ(std::strlen(buf.data()), n);
  EXPECT_NE(std::string(buf.data()).find("translate_y"), std::string::npos);
  char small[8];
  aprkit_op_registry_json(small, sizeof small);
  EXPECT_EQ(std::strlen(small), 7u);
}

TEST(CApi, ImageLifecycleAndErrors) {
  const std::vector<double> px = RandomPixels(2 * 3 * 3, 1);
  aprkit_image* img = nullptr;
  ASSERT_EQ(aprkit_image_create(2, 3, 3, px.data(), &img), APRKIT_OK);
  EXPECT_EQ(aprkit_image_height(img), 2u);
  EXPECT_EQ(aprkit_image_width(img), 3u);
  EXPECT_EQ(aprkit_image_channels(img), 3u);
  std::vector<double> back(px.size());
  EXPECT_EQ(aprkit_image_copy(img, back.data(), back.size()), APRKIT_OK);
  EXPECT_EQ(back, px);
  EXPECT_EQ(aprkit_image_copy(img, back.data(), 3), APRKIT_ERR_DIMENSION);
  EXPECT_NE(std::string(aprkit_last_error()).find("buffer"), std::string::npos);
  aprkit_image_free(img);
  aprkit_image_free(nullptr);

  std::vector<double> bad(4, 0.5);
  bad[2] = 1.5;
  aprkit_image* out = reinterpret_cast<aprkit_image*>(0x1);
  EXPECT_EQ(aprkit_image_create(2, 2, 1, bad.data(), &out), APRKIT_ERR_DOMAIN);
  EXPECT_EQ(out, nullptr);
  EXPECT_EQ(aprkit_image_create(2, 2, 2, bad.data(), &out), APRKIT_ERR_DIMENSION);
  EXPECT_EQ(aprkit_image_create(0, 2, 1, bad.data(), &out), APRKIT_ERR_DIMENSION);
  EXPECT_EQ(aprkit_image_create(2, 2, 1, nullptr, &out), APRKIT_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(aprkit_image_read("/nonexistent/file.png", &out), APRKIT_ERR_IO);
  EXPECT_EQ(aprkit_image_height(nullptr), 0u);
}

TEST(CApi, PairAndBatchesAgree) {
  const std::size_t n = 3, c = 3, h = 8, w = 8, per = c * h * w;
  const std::vector<double> a = RandomPixels(n * per, 2);
  const std::vector<double> b = RandomPixels(n * per, 3);
  std::vector<double> out(n * per);
  ASSERT_EQ(aprkit_apr_pair_batch(a.data(), b.data(), n, c, h, w, out.data()), APRKIT_OK);
  for (std::size_t k = 0; k < n; ++k) {
    aprkit_image *pa = nullptr, *pb = nullptr, *mixed = nullptr;
    ASSERT_EQ(aprkit_image_create(h, w, c, a.data() + k * per, &pa), APRKIT_OK);
    ASSERT_EQ(aprkit_image_create(h, w, c, b.data() + k * per, &pb), APRKIT_OK);
    ASSERT_EQ(aprkit_apr_pair(pa, pb, &mixed), APRKIT_OK);
    std::vector<double> single(per);
    aprkit_image_copy(mixed, single.data(), per);
    EXPECT_TRUE(std::equal(single.begin(), single.end(), out.begin() + k * per));
    aprkit_image_free(pa);
    aprkit_image_free(pb);
    aprkit_image_free(mixed);
  }
  // Self-pairing is the identity.
  ASSERT_EQ(aprkit_apr_pair_batch(a.data(), a.data(), n, c, h, w, out.data()), APRKIT_OK);
  for (std::size_t k = 0; k < out.size(); ++k) ASSERT_NEAR(out[k], a[k], 1e-9);
  EXPECT_EQ(aprkit_apr_pair_batch(a.data(), b.data(), n, 0, h, w, out.data()), APRKIT_ERR_DIMENSION);
}

TEST(CApi, SeededBatchIsDeterministicAcrossWorkers) {
  const std::size_t n = 6, c = 3, h = 8, w = 8, per = c * h * w;
  const std::vector<double> in = RandomPixels(n * per, 4);
  const std::vector<int64_t> labels{0, 1, 2, 0, 1, 2};
  aprkit_apr_config cfg;
  aprkit_apr_config_init(&cfg);
  cfg.mode = APRKIT_MODE_SINGLE_PAIR;
  cfg.seed = 17;
  std::vector<double> one(n * per), four(n * per);
  std::vector<int64_t> l1(n), l4(n);
  ASSERT_EQ(aprkit_apr_batch(in.data(), labels.data(), n, c, h, w, &cfg, 1, one.data(), l1.data()), APRKIT_OK);
  ASSERT_EQ(aprkit_apr_batch(in.data(), labels.data(), n, c, h, w, &cfg, 4, four.data(), l4.data()), APRKIT_OK);
  EXPECT_EQ(one, four);
  EXPECT_EQ(l1, labels);
  EXPECT_NE(one, in);

  cfg.apply_probability = 0.0;
  ASSERT_EQ(aprkit_apr_batch(in.data(), labels.data(), n, c, h, w, &cfg, 2, one.data(), l1.data()), APRKIT_OK);
  EXPECT_EQ(one, in);

  cfg.apply_probability = 2.0;
  EXPECT_EQ(aprkit_apr_batch(in.data(), labels.data(), n, c, h, w, &cfg, 1, one.data(), l1.data()),
            APRKIT_ERR_INVALID_ARGUMENT);
  cfg.apply_probability = 1.0;
  cfg.mode = static_cast<aprkit_mode>(9);
  EXPECT_EQ(aprkit_apr_batch(in.data(), labels.data(), n, c, h, w, &cfg, 1, one.data(), l1.data()),
            APRKIT_ERR_INVALID_ARGUMENT);
  cfg.mode = APRKIT_MODE_PAIR;
  EXPECT_EQ(aprkit_apr_batch(in.data(), labels.data(), 0, c, h, w, &cfg, 1, one.data(), l1.data()),
            APRKIT_ERR_INVALID_ARGUMENT);
}

TEST(CApi, SpectrumBandsAndTemplates) {
  aprkit_image* img = nullptr;
  ASSERT_EQ(aprkit_image_read(aprkit::testing::DataPath("phase_source.png").c_str(), &img), APRKIT_OK);
  aprkit_image *amp = nullptr, *phase = nullptr, *full = nullptr;
  ASSERT_EQ(aprkit_render_spectrum(img, &amp, &phase), APRKIT_OK);
  EXPECT_EQ(aprkit_image_width(amp), 32u);
  ASSERT_EQ(aprkit_compose_bands(img, APRKIT_BAND_FULL, img, APRKIT_BAND_FULL, &full), APRKIT_OK);
  std::vector<double> a(32 * 32 * 3), b(a.size());
  aprkit_image_copy(img, a.data(), a.size());
  aprkit_image_copy(full, b.data(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) ASSERT_NEAR(a[k], b[k], 1e-9);
  EXPECT_STREQ(aprkit_band_name(APRKIT_BAND_INTERMEDIATE), "intermediate");
  aprkit_image* bogus = nullptr;
  EXPECT_EQ(aprkit_compose_bands(img, static_cast<aprkit_band>(7), img, APRKIT_BAND_LOW, &bogus),
            APRKIT_ERR_INVALID_ARGUMENT);

  aprkit_image* t[4] = {};
  ASSERT_EQ(aprkit_templates(8, 0, 0, t), APRKIT_OK);
  std::vector<double> grid(64);
  aprkit_image_copy(t[0], grid.data(), grid.size());
  for (double v : grid) EXPECT_EQ(v, 1.0);
  for (aprkit_image* p : t) aprkit_image_free(p);
  EXPECT_EQ(aprkit_templates(8, 8, 0, t), APRKIT_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(t[0], nullptr);

  aprkit_image* resized = nullptr;
  ASSERT_EQ(aprkit_image_resize(img, 16, 20, &resized), APRKIT_OK);
  EXPECT_EQ(aprkit_image_width(resized), 20u);
  for (aprkit_image* p : {img, amp, phase, full, resized}) aprkit_image_free(p);
}

TEST(CApi, MetricsOnRawArrays) {
  const double e[5] = {0.1, 0.2, 0.3, 0.4, 0.5}, r[5] = {0.2, 0.4, 0.6, 0.8, 1.0};
  double v = 0.0;
  ASSERT_EQ(aprkit_corruption_error(e, r, &v), APRKIT_OK);
  EXPECT_DOUBLE_EQ(v, 0.5);
  const double zero[5] = {};
  EXPECT_EQ(aprkit_corruption_error(e, zero, &v), APRKIT_ERR_DOMAIN);
  const double ce[3] = {0.5, 1.0, 1.5};
  ASSERT_EQ(aprkit_mean_corruption_error(ce, 3, &v), APRKIT_OK);
  EXPECT_DOUBLE_EQ(v, 1.0);
  EXPECT_EQ(aprkit_mean_corruption_error(ce, 0, &v), APRKIT_ERR_INVALID_ARGUMENT);
  const double in[2] = {0.8, 0.4}, out[1] = {0.6};
  ASSERT_EQ(aprkit_auroc(in, 2, out, 1, &v), APRKIT_OK);
  EXPECT_DOUBLE_EQ(v, 0.5);
  const double p[2] = {1, 0}, a[2] = {0, 1};
  double blended[2];
  ASSERT_EQ(aprkit_blend(p, a, 2, 0.25, blended), APRKIT_OK);
  EXPECT_DOUBLE_EQ(blended[0], 0.25);
  EXPECT_DOUBLE_EQ(blended[1], 0.75);
  EXPECT_EQ(aprkit_blend(p, a, 2, -0.1, blended), APRKIT_ERR_INVALID_ARGUMENT);
}

TEST(CApi, ScoreAndCorruptionFiles) {
  aprkit::testing::TempDir dir("capi");
  aprkit::testing::WriteText(dir / "phase.csv",
                             "id,is_ood,true_label,p0,p1\na,0,0,0.9,0.1\nb,0,1,0.6,0.4\nc,1,-1,0.5,0.5\n");
  aprkit::testing::WriteText(dir / "amp.csv",
                             "id,is_ood,true_label,p0,p1\nc,1,-1,0.2,0.8\nb,0,1,0.0,1.0\na,0,0,0.7,0.3\n");
  aprkit_scores *phase = nullptr, *amp = nullptr, *blended = nullptr;
  ASSERT_EQ(aprkit_scores_read((dir / "phase.csv").c_str(), &phase), APRKIT_OK);
  ASSERT_EQ(aprkit_scores_read((dir / "amp.csv").c_str(), &amp), APRKIT_OK);
  EXPECT_EQ(aprkit_scores_count(phase), 3u);
  double v = 0.0, ccr = 0.0, fpr = 0.0;
  ASSERT_EQ(aprkit_scores_auroc(phase, &v), APRKIT_OK);
  EXPECT_DOUBLE_EQ(v, 1.0);
  ASSERT_EQ(aprkit_scores_ccr_fpr(phase, 0.0, &ccr, &fpr), APRKIT_OK);
  EXPECT_DOUBLE_EQ(ccr, 0.5);
  EXPECT_DOUBLE_EQ(fpr, 1.0);
  ASSERT_EQ(aprkit_scores_oscr(phase, &v), APRKIT_OK);
  EXPECT_DOUBLE_EQ(v, 0.5);
  ASSERT_EQ(aprkit_scores_blend_write(phase, amp, 0.5, (dir / "mix.csv").c_str()), APRKIT_OK);
  ASSERT_EQ(aprkit_scores_read((dir / "mix.csv").c_str(), &blended), APRKIT_OK);
  // b: 0.5*[0.6,0.4] + 0.5*[0,1] = [0.3, 0.7] -> now correct.
  ASSERT_EQ(aprkit_scores_ccr_fpr(blended, 0.0, &ccr, &fpr), APRKIT_OK);
  EXPECT_DOUBLE_EQ(ccr, 1.0);
  EXPECT_EQ(aprkit_scores_blend_write(phase, amp, 0.5, "/nonexistent/dir/x.csv"), APRKIT_ERR_IO);
  aprkit_scores_free(phase);
  aprkit_scores_free(amp);
  aprkit_scores_free(blended);

  aprkit::testing::WriteText(dir / "err.csv", "corruption,s1,s2,s3,s4,s5\nfog,0.1,0.2,0.3,0.4,0.5\n");
  aprkit::testing::WriteText(dir / "ref.csv", "corruption,s1,s2,s3,s4,s5\nfog,0.2,0.4,0.6,0.8,1.0\n");
  aprkit_corruption_report* rep = nullptr;
  ASSERT_EQ(aprkit_corruption_report_read((dir / "err.csv").c_str(), (dir / "ref.csv").c_str(), &rep),
            APRKIT_OK);
  ASSERT_EQ(aprkit_corruption_report_count(rep), 1u);
  EXPECT_STREQ(aprkit_corruption_report_name(rep, 0), "fog");
  EXPECT_DOUBLE_EQ(aprkit_corruption_report_ce(rep, 0), 0.5);
  EXPECT_DOUBLE_EQ(aprkit_corruption_report_mce(rep), 0.5);
  EXPECT_EQ(aprkit_corruption_report_name(rep, 1), nullptr);
  EXPECT_TRUE(std::isnan(aprkit_corruption_report_ce(rep, 3)));
  aprkit_corruption_report_free(rep);
  EXPECT_EQ(aprkit_corruption_report_read((dir / "err.csv").c_str(), (dir / "none.csv").c_str(), &rep),
            APRKIT_ERR_IO);
  aprkit::testing::WriteText(dir / "bad.csv", "corruption,s1\n");
  EXPECT_EQ(aprkit_corruption_report_read((dir / "bad.csv").c_str(), (dir / "ref.csv").c_str(), &rep),
            APRKIT_ERR_DATA);
}

TEST(CApi, DatasetJobs) {
  aprkit::testing::TempDir dir("capi");
  const std::string manifest = aprkit::testing::DataPath("dataset/manifest.jsonl").string();
  aprkit_apr_config cfg;
  aprkit_apr_config_init(&cfg);
  cfg.seed = 5;
  std::size_t written = 0;
  ASSERT_EQ(aprkit_augment_dataset(manifest.c_str(), &cfg, (dir / "aug").c_str(), 0, 2, &written),
            APRKIT_OK);
  EXPECT_EQ(written, 6u);

  ASSERT_EQ(aprkit_write_basis((dir / "basis").c_str(), 32, 32, 2, -1, 15.0), APRKIT_OK);
  EXPECT_TRUE(fs::exists(dir / "basis/2_-1.csv"));
  EXPECT_EQ(aprkit_write_basis((dir / "basis").c_str(), 32, 32, 20, 0, 15.0), APRKIT_ERR_INVALID_ARGUMENT);
  ASSERT_EQ(aprkit_perturb_dataset(manifest.c_str(), (dir / "basis").c_str(), 3, 4,
                                   (dir / "pert").c_str(), &written),
            APRKIT_OK);
  EXPECT_EQ(written, 4u);

  aprkit::testing::WriteText(dir / "records.csv", "i,j,n_total,n_wrong\n0,0,1000,100\n");
  std::size_t missing = 0;
  ASSERT_EQ(aprkit_heatmap((dir / "records.csv").c_str(), 0, (dir / "heat.csv").c_str(),
                           (dir / "heat.png").c_str(), &missing),
            APRKIT_OK);
  EXPECT_EQ(missing, 1088u);
  EXPECT_TRUE(fs::exists(dir / "heat.png"));
  aprkit::testing::WriteText(dir / "pred.csv", "path,true_label,pred_label\np/1_1/a.png,0,1\n");
  ASSERT_EQ(aprkit_heatmap((dir / "pred.csv").c_str(), 1, (dir / "heat2.csv").c_str(), nullptr, &missing),
            APRKIT_OK);
  EXPECT_EQ(missing, 1088u);
  EXPECT_EQ(aprkit_augment_dataset((dir / "none.jsonl").c_str(), &cfg, (dir / "x").c_str(), 0, 1, nullptr),
            APRKIT_ERR_IO);
}

}  // namespace
