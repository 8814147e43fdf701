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

// Robustness metrics computed from prediction and score files: corruption
// error normalized by a reference model, AUROC, open-set CCR / FPR / OSCR,
// and blended phase/amplitude predictions.

#ifndef APRKIT_METRICS_HPP_
#define APRKIT_METRICS_HPP_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace aprkit {

inline constexpr std::size_t kSeverityCount = 5;
inline constexpr double kProbabilitySumTolerance = 1e-6;

// sum(errors) / sum(reference) over the five severities.
double CorruptionError(std::span<const double> errors,
                       std::span<const double> reference);

double MeanCorruptionError(std::span<const double> ce_values);

struct CorruptionTable {
  std::vector<std::string> names;
  std::vector<std::array<double, kSeverityCount>> errors;
};

// CSV `corruption,s1,s2,s3,s4,s5` with that header; errors in [0, 1].
CorruptionTable ReadCorruptionTable(std::istream& in);

struct CorruptionReport {
  std::vector<std::pair<std::string, double>> ce;  // in table order
  double mce = 0.0;
};

// Every corruption in `errors` must also appear in `reference`.
CorruptionReport EvaluateCorruption(const CorruptionTable& errors,
                                    const CorruptionTable& reference);

// P(in > out) + 0.5 P(in == out) over all (in, out) pairs.
double Auroc(std::span<const double> in_scores,
             std::span<const double> out_scores);

struct ScoredRecord {
  std::string id;
  std::optional<std::int64_t> true_label;  // empty for out-of-distribution
  std::int64_t predicted_label = 0;
  double score = 0.0;                      // max class probability
  std::vector<double> probabilities;       // empty in the pred/score format

  bool is_ood() const { return !true_label.has_value(); }
  bool correct() const { return true_label && *true_label == predicted_label; }
};

// Fills predicted_label / score from a probability vector (argmax, first
// index on ties). Throws kData if the vector is not a distribution.
ScoredRecord RecordFromProbabilities(std::string id,
                                     std::optional<std::int64_t> true_label,
                                     std::vector<double> probabilities);

struct CcrFpr {
  double ccr = 0.0;
  double fpr = 0.0;
};

// CCR: in-distribution records predicted correctly with score >= threshold.
// FPR: out-of-distribution records with score >= threshold.
CcrFpr CcrFprAt(std::span<const ScoredRecord> records, double threshold);

// Trapezoidal area under CCR vs FPR, sweeping every distinct score plus
// sentinels above the maximum (0, 0) and below the minimum (1, accuracy).
double Oscr(std::span<const ScoredRecord> records);

// Max-softmax AUROC with in-distribution as the positive class.
double AurocFromRecords(std::span<const ScoredRecord> records);

std::vector<double> BlendPredictions(std::span<const double> p_phase,
                                     std::span<const double> p_amp,
                                     double lambda);

// Either `id,is_ood,true_label,p0,p1,...` or
// `id,is_ood,true_label,pred_label,score` (detected from the header).
std::vector<ScoredRecord> ReadScoredRecords(std::istream& in);

// Probability format; every record must carry probabilities.
void WriteProbabilityRecords(std::ostream& out,
                             std::span<const ScoredRecord> records);

}  // namespace aprkit

#endif  // APRKIT_METRICS_HPP_
