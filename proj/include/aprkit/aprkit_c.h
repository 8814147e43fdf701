/*
 * Copyright 2026 The aprkit Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface of libaprkit.
 *
 * Every fallible call returns an aprkit_status; on failure the message is
 * available from aprkit_last_error() on the same thread until the next call.
 * Handles are opaque and owned by the caller once returned; release them
 * with the matching *_free function (NULL is accepted).
 *
 * Pixel buffers are planar doubles in [0, 1]: value (c, y, x) at
 * (c * height + y) * width + x. Batches stack samples: (n, c, h, w).
 */

#ifndef APRKIT_APRKIT_C_H_
#define APRKIT_APRKIT_C_H_

#include <stddef.h>
#include <stdint.h>

#if defined(APRKIT_BUILDING_LIBRARY)
#define APRKIT_API __attribute__((visibility("default")))
#else
#define APRKIT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum aprkit_status {
  APRKIT_OK = 0,
  APRKIT_ERR_INVALID_ARGUMENT = 1,
  APRKIT_ERR_DIMENSION = 2,
  APRKIT_ERR_DOMAIN = 3,
  APRKIT_ERR_DATA = 4,
  APRKIT_ERR_IO = 5,
  APRKIT_ERR_INTERNAL = 6
} aprkit_status;

typedef enum aprkit_band {
  APRKIT_BAND_LOW = 0,
  APRKIT_BAND_INTERMEDIATE = 1,
  APRKIT_BAND_HIGH = 2,
  APRKIT_BAND_FULL = 3
} aprkit_band;

typedef enum aprkit_mode {
  APRKIT_MODE_PAIR = 0,
  APRKIT_MODE_SINGLE = 1,
  APRKIT_MODE_SINGLE_PAIR = 2
} aprkit_mode;

typedef struct aprkit_apr_config {
  aprkit_mode mode;
  double apply_probability;
  uint64_t seed;
  int chain_length_min;
  int chain_length_max;
} aprkit_apr_config;

typedef struct aprkit_image aprkit_image;
typedef struct aprkit_scores aprkit_scores;
typedef struct aprkit_corruption_report aprkit_corruption_report;

/* ---- library ---------------------------------------------------------- */

APRKIT_API const char* aprkit_version(void);
APRKIT_API const char* aprkit_last_error(void);
APRKIT_API const char* aprkit_status_name(aprkit_status status);

/* Defaults: pair mode, probability 1, seed 0, chain length 1..3. */
APRKIT_API void aprkit_apr_config_init(aprkit_apr_config* config);

/* Child seed for (stream, index); the stream ids are fixed constants. */
APRKIT_API uint64_t aprkit_derive_seed(uint64_t base, uint64_t stream,
                                       uint64_t index);
#define APRKIT_SEED_STREAM_PERMUTATION 1u
#define APRKIT_SEED_STREAM_SAMPLE 2u
#define APRKIT_SEED_STREAM_BATCH 3u

/* Copies the op registry JSON into buf (NUL-terminated when it fits) and
 * returns the full length without the terminator. */
APRKIT_API size_t aprkit_op_registry_json(char* buf, size_t capacity);

/* ---- images ----------------------------------------------------------- */

APRKIT_API aprkit_status aprkit_image_create(size_t height, size_t width,
                                             size_t channels,
                                             const double* planar,
                                             aprkit_image** out);
APRKIT_API aprkit_status aprkit_image_read(const char* path,
                                           aprkit_image** out);
APRKIT_API aprkit_status aprkit_image_write(const aprkit_image* image,
                                            const char* path);
APRKIT_API void aprkit_image_free(aprkit_image* image);
APRKIT_API size_t aprkit_image_height(const aprkit_image* image);
APRKIT_API size_t aprkit_image_width(const aprkit_image* image);
APRKIT_API size_t aprkit_image_channels(const aprkit_image* image);
/* Copies height * width * channels planar values into out. */
APRKIT_API aprkit_status aprkit_image_copy(const aprkit_image* image,
                                           double* out, size_t count);
APRKIT_API aprkit_status aprkit_image_resize(const aprkit_image* image,
                                             size_t height, size_t width,
                                             aprkit_image** out);

/* ---- spectral operations --------------------------------------------- */

/* Phase of phase_src with the amplitude of amp_src, clamped to [0, 1]. */
APRKIT_API aprkit_status aprkit_apr_pair(const aprkit_image* phase_src,
                                         const aprkit_image* amp_src,
                                         aprkit_image** out);

/* Centered log-amplitude and phase renderings. */
APRKIT_API aprkit_status aprkit_render_spectrum(const aprkit_image* image,
                                                aprkit_image** log_amplitude,
                                                aprkit_image** phase);

APRKIT_API aprkit_status aprkit_compose_bands(const aprkit_image* amp_src,
                                              aprkit_band amp_band,
                                              const aprkit_image* phase_src,
                                              aprkit_band phase_band,
                                              aprkit_image** out);
APRKIT_API const char* aprkit_band_name(aprkit_band band);

/* The four templates of frequency (u, v) on a size x size grid, in the
 * order real+, real-, imag+, imag-. */
APRKIT_API aprkit_status aprkit_templates(size_t size, size_t u, size_t v,
                                          aprkit_image* out[4]);

/* ---- batch augmentation on raw buffers -------------------------------- */

/* Per-sample pair recombination: out[k] = pair(phase[k], amp[k]). */
APRKIT_API aprkit_status aprkit_apr_pair_batch(const double* phase,
                                               const double* amp, size_t n,
                                               size_t channels, size_t height,
                                               size_t width, double* out);

/* Seeded batch augmentation. out and out_labels receive n samples. */
APRKIT_API aprkit_status aprkit_apr_batch(const double* in,
                                          const int64_t* labels, size_t n,
                                          size_t channels, size_t height,
                                          size_t width,
                                          const aprkit_apr_config* config,
                                          size_t workers, double* out,
                                          int64_t* out_labels);

/* ---- dataset jobs ----------------------------------------------------- */

APRKIT_API aprkit_status aprkit_augment_dataset(
    const char* manifest_path, const aprkit_apr_config* config,
    const char* out_dir, size_t batch_size, size_t workers,
    size_t* images_written);

/* Writes <i>_<j>.csv and a preview PNG into out_dir. */
APRKIT_API aprkit_status aprkit_write_basis(const char* out_dir,
                                            size_t height, size_t width,
                                            int i, int j, double norm);

/* Perturbs a seeded subset of sample_count manifest images (all of them when
 * sample_count is 0) with every basis file in basis_dir. */
APRKIT_API aprkit_status aprkit_perturb_dataset(const char* manifest_path,
                                                const char* basis_dir,
                                                uint64_t seed,
                                                size_t sample_count,
                                                const char* out_dir,
                                                size_t* images_written);

/* Builds the 33 x 33 heatmap from an i,j,n_total,n_wrong CSV
 * (from_predictions = 0) or a path,true_label,pred_label CSV (1). Writes the
 * heatmap CSV and, when png_path is non-NULL, a gray PNG. missing_cells
 * receives the number of offsets without data. */
APRKIT_API aprkit_status aprkit_heatmap(const char* input_csv,
                                        int from_predictions,
                                        const char* out_csv,
                                        const char* png_path,
                                        size_t* missing_cells);

/* ---- metrics ---------------------------------------------------------- */

APRKIT_API aprkit_status aprkit_corruption_error(const double errors[5],
                                                 const double reference[5],
                                                 double* out);
APRKIT_API aprkit_status aprkit_mean_corruption_error(const double* ce,
                                                      size_t count,
                                                      double* out);
APRKIT_API aprkit_status aprkit_auroc(const double* in_scores, size_t n_in,
                                      const double* out_scores, size_t n_out,
                                      double* out);
APRKIT_API aprkit_status aprkit_blend(const double* p_phase,
                                      const double* p_amp, size_t count,
                                      double lambda, double* out);

APRKIT_API aprkit_status aprkit_corruption_report_read(
    const char* errors_csv, const char* reference_csv,
    aprkit_corruption_report** out);
APRKIT_API void aprkit_corruption_report_free(aprkit_corruption_report* r);
APRKIT_API size_t aprkit_corruption_report_count(
    const aprkit_corruption_report* r);
APRKIT_API const char* aprkit_corruption_report_name(
    const aprkit_corruption_report* r, size_t index);
APRKIT_API double aprkit_corruption_report_ce(
    const aprkit_corruption_report* r, size_t index);
APRKIT_API double aprkit_corruption_report_mce(
    const aprkit_corruption_report* r);

APRKIT_API aprkit_status aprkit_scores_read(const char* path,
                                            aprkit_scores** out);
APRKIT_API void aprkit_scores_free(aprkit_scores* scores);
APRKIT_API size_t aprkit_scores_count(const aprkit_scores* scores);
APRKIT_API aprkit_status aprkit_scores_auroc(const aprkit_scores* scores,
                                             double* out);
APRKIT_API aprkit_status aprkit_scores_oscr(const aprkit_scores* scores,
                                            double* out);
APRKIT_API aprkit_status aprkit_scores_ccr_fpr(const aprkit_scores* scores,
                                               double threshold, double* ccr,
                                               double* fpr);
/* Blends two probability-format score files record by record (matched by
 * id) and writes a probability-format CSV. */
APRKIT_API aprkit_status aprkit_scores_blend_write(
    const aprkit_scores* phase, const aprkit_scores* amp, double lambda,
    const char* out_csv);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  /* APRKIT_APRKIT_C_H_ */
