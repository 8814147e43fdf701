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

#include "aprkit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "aprkit/error.hpp"
#include "text.hpp"

namespace aprkit {
namespace {

struct Populations {
  std::size_t in = 0;
  std::size_t out = 0;
};

Populations CountPopulations(std::span<const ScoredRecord> records) {
  Populations p;
  for (const ScoredRecord& r : records) (r.is_ood() ? p.out : p.in)++;
  if (p.in == 0 || p.out == 0) {
    Fail(ErrorKind::kInvalidArgument,
         "need at least one in-distribution and one out-of-distribution "
         "record");
  }
  return p;
}

void CheckDistribution(std::span<const double> p, const char* what) {
  if (p.empty()) Fail(ErrorKind::kData, std::string(what) + ": empty");
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      Fail(ErrorKind::kData, std::string(what) + ": negative or non-finite entry");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kProbabilitySumTolerance) {
    Fail(ErrorKind::kData,
         std::string(what) + ": entries sum to " + text::FormatDouble(sum));
  }
}

std::optional<std::int64_t> ParseLabel(std::string_view is_ood,
                                       std::string_view label,
                                       std::size_t line_no) {
  if (is_ood == "1") return std::nullopt;
  if (is_ood != "0") {
    Fail(ErrorKind::kData,
         "line " + std::to_string(line_no) + ": is_ood must be 0 or 1");
  }
  const std::int64_t v = text::ParseInt(label, line_no);
  if (v < 0) {
    Fail(ErrorKind::kData, "line " + std::to_string(line_no) + ": negative label");
  }
  return v;
}

}  // namespace

double CorruptionError(std::span<const double> errors,
                       std::span<const double> reference) {
  if (errors.size() != kSeverityCount || reference.size() != kSeverityCount) {
    Fail(ErrorKind::kInvalidArgument, "corruption error needs 5 severities");
  }
  const double num = std::accumulate(errors.begin(), errors.end(), 0.0);
  const double den = std::accumulate(reference.begin(), reference.end(), 0.0);
  if (den == 0.0) {
    Fail(ErrorKind::kDomain, "reference errors sum to zero");
  }
  return num / den;
}

double MeanCorruptionError(std::span<const double> ce_values) {
  if (ce_values.empty()) {
    Fail(ErrorKind::kInvalidArgument, "mean of no corruption errors");
  }
  // Offsets from the first value keep equal inputs exact.
  const double base = ce_values.front();
  double offset = 0.0;
  for (double v : ce_values) offset += v - base;
  return base + offset / static_cast<double>(ce_values.size());
}

CorruptionTable ReadCorruptionTable(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!text::NextLine(in, line, line_no)) {
    Fail(ErrorKind::kData, "empty corruption table");
  }
  if (text::Trim(line) != "corruption,s1,s2,s3,s4,s5") {
    Fail(ErrorKind::kData, "corruption table header must be "
                           "'corruption,s1,s2,s3,s4,s5'");
  }
  CorruptionTable table;
  while (text::NextLine(in, line, line_no)) {
    const auto fields = text::SplitCsv(line);
    if (fields.size() != 1 + kSeverityCount) {
      Fail(ErrorKind::kData,
           "line " + std::to_string(line_no) + ": expected 6 fields");
    }
    if (std::find(table.names.begin(), table.names.end(), fields[0]) !=
        table.names.end()) {
      Fail(ErrorKind::kData, "duplicate corruption '" + fields[0] + "'");
    }
    std::array<double, kSeverityCount> row{};
    for (std::size_t s = 0; s < kSeverityCount; ++s) {
      row[s] = text::ParseDouble(fields[s + 1], line_no);
      if (!(row[s] >= 0.0 && row[s] <= 1.0)) {
        Fail(ErrorKind::kData, "line " + std::to_string(line_no) +
                                   ": error rate outside [0, 1]");
      }
    }
    table.names.push_back(fields[0]);
    table.errors.push_back(row);
  }
  return table;
}

CorruptionReport EvaluateCorruption(const CorruptionTable& errors,
                                    const CorruptionTable& reference) {
  if (errors.names.empty()) Fail(ErrorKind::kData, "no corruptions");
  CorruptionReport report;
  std::vector<double> values;
  for (std::size_t k = 0; k < errors.names.size(); ++k) {
    const auto it = std::find(reference.names.begin(), reference.names.end(),
                              errors.names[k]);
    if (it == reference.names.end()) {
      Fail(ErrorKind::kData,
           "corruption '" + errors.names[k] + "' missing from the reference");
    }
    const auto& ref = reference.errors[it - reference.names.begin()];
    const double ce = CorruptionError(errors.errors[k], ref);
    report.ce.emplace_back(errors.names[k], ce);
    values.push_back(ce);
  }
  report.mce = MeanCorruptionError(values);
  return report;
}

double Auroc(std::span<const double> in_scores,
             std::span<const double> out_scores) {
  if (in_scores.empty() || out_scores.empty()) {
    Fail(ErrorKind::kInvalidArgument, "AUROC needs scores on both sides");
  }
  // Mann-Whitney U with mid-ranks for ties.
  std::vector<std::pair<double, bool>> all;
  all.reserve(in_scores.size() + out_scores.size());
  for (double s : in_scores) all.emplace_back(s, true);
  for (double s : out_scores) all.emplace_back(s, false);
  std::sort(all.begin(), all.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  double in_rank_sum = 0.0;
  for (std::size_t lo = 0; lo < all.size();) {
    std::size_t hi = lo;
    std::size_t in_count = 0;
    while (hi < all.size() && all[hi].first == all[lo].first) {
      in_count += all[hi].second ? 1 : 0;
      ++hi;
    }
    // Ranks lo+1 .. hi share the average rank.
    const double mid_rank = (static_cast<double>(lo + 1 + hi)) / 2.0;
    in_rank_sum += mid_rank * static_cast<double>(in_count);
    lo = hi;
  }
  const double n_in = static_cast<double>(in_scores.size());
  const double n_out = static_cast<double>(out_scores.size());
  return (in_rank_sum - n_in * (n_in + 1.0) / 2.0) / (n_in * n_out);
}

ScoredRecord RecordFromProbabilities(std::string id,
                                     std::optional<std::int64_t> true_label,
                                     std::vector<double> probabilities) {
  CheckDistribution(probabilities, "probability vector");
  const auto best =
      std::max_element(probabilities.begin(), probabilities.end());
  ScoredRecord r;
  r.id = std::move(id);
  r.true_label = true_label;
  r.predicted_label = best - probabilities.begin();
  r.score = *best;
  r.probabilities = std::move(probabilities);
  return r;
}

CcrFpr CcrFprAt(std::span<const ScoredRecord> records, double threshold) {
  const Populations pop = CountPopulations(records);
  std::size_t accepted_in = 0, accepted_out = 0;
  for (const ScoredRecord& r : records) {
    if (r.score < threshold) continue;
    if (r.is_ood()) {
      ++accepted_out;
    } else if (r.correct()) {
      ++accepted_in;
    }
  }
  return {static_cast<double>(accepted_in) / static_cast<double>(pop.in),
          static_cast<double>(accepted_out) / static_cast<double>(pop.out)};
}

double Oscr(std::span<const ScoredRecord> records) {
  const Populations pop = CountPopulations(records);
  std::vector<const ScoredRecord*> order;
  order.reserve(records.size());
  for (const ScoredRecord& r : records) order.push_back(&r);
  std::sort(order.begin(), order.end(),
            [](const ScoredRecord* a, const ScoredRecord* b) {
              return a->score > b->score;
            });
  // Lowering the threshold through each distinct score admits one group of
  // records; the curve starts at the (0, 0) sentinel above the maximum.
  double area = 0.0;
  double prev_fpr = 0.0, prev_ccr = 0.0;
  std::size_t accepted_in = 0, accepted_out = 0;
  for (std::size_t lo = 0; lo < order.size();) {
    std::size_t hi = lo;
    while (hi < order.size() && order[hi]->score == order[lo]->score) {
      if (order[hi]->is_ood()) {
        ++accepted_out;
      } else if (order[hi]->correct()) {
        ++accepted_in;
      }
      ++hi;
    }
    const double fpr =
        static_cast<double>(accepted_out) / static_cast<double>(pop.out);
    const double ccr =
        static_cast<double>(accepted_in) / static_cast<double>(pop.in);
    area += (fpr - prev_fpr) * (ccr + prev_ccr) / 2.0;
    prev_fpr = fpr;
    prev_ccr = ccr;
    lo = hi;
  }
  // The sentinel below the minimum admits nothing new: (1, accuracy).
  return area;
}

double AurocFromRecords(std::span<const ScoredRecord> records) {
  std::vector<double> in, out;
  for (const ScoredRecord& r : records) (r.is_ood() ? out : in).push_back(r.score);
  return Auroc(in, out);
}

std::vector<double> BlendPredictions(std::span<const double> p_phase,
                                     std::span<const double> p_amp,
                                     double lambda) {
  if (p_phase.size() != p_amp.size()) {
    Fail(ErrorKind::kDimension, "probability vectors differ in length");
  }
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    Fail(ErrorKind::kInvalidArgument, "lambda must be in [0, 1]");
  }
  CheckDistribution(p_phase, "phase prediction");
  CheckDistribution(p_amp, "amplitude prediction");
  std::vector<double> out(p_phase.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = lambda * p_phase[k] + (1.0 - lambda) * p_amp[k];
  }
  return out;
}

std::vector<ScoredRecord> ReadScoredRecords(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!text::NextLine(in, line, line_no)) Fail(ErrorKind::kData, "empty score file");
  const auto header = text::SplitCsv(line);
  if (header.size() < 4 || header[0] != "id" || header[1] != "is_ood" ||
      header[2] != "true_label") {
    Fail(ErrorKind::kData,
         "score file header must start with 'id,is_ood,true_label'");
  }
  const bool pred_format = header.size() == 5 && header[3] == "pred_label" &&
                           header[4] == "score";
  std::vector<ScoredRecord> records;
  while (text::NextLine(in, line, line_no)) {
    const auto f = text::SplitCsv(line);
    if (f.size() != header.size()) {
      Fail(ErrorKind::kData, "line " + std::to_string(line_no) + ": expected " +
                                 std::to_string(header.size()) + " fields");
    }
    auto label = ParseLabel(f[1], f[2], line_no);
    if (pred_format) {
      ScoredRecord r;
      r.id = f[0];
      r.true_label = label;
      r.predicted_label = text::ParseInt(f[3], line_no);
      r.score = text::ParseDouble(f[4], line_no);
      if (!(r.score >= 0.0 && r.score <= 1.0)) {
        Fail(ErrorKind::kData,
             "line " + std::to_string(line_no) + ": score outside [0, 1]");
      }
      records.push_back(std::move(r));
    } else {
      std::vector<double> probs;
      for (std::size_t k = 3; k < f.size(); ++k) {
        probs.push_back(text::ParseDouble(f[k], line_no));
      }
      try {
        records.push_back(RecordFromProbabilities(f[0], label, std::move(probs)));
      } catch (const Error& e) {
        Fail(e.kind(), "line " + std::to_string(line_no) + ": " + e.what());
      }
    }
  }
  return records;
}

void WriteProbabilityRecords(std::ostream& out,
                             std::span<const ScoredRecord> records) {
  if (records.empty()) Fail(ErrorKind::kInvalidArgument, "no records to write");
  const std::size_t classes = records.front().probabilities.size();
  out << "id,is_ood,true_label";
  for (std::size_t k = 0; k < classes; ++k) out << ",p" << k;
  out << '\n';
  for (const ScoredRecord& r : records) {
    if (r.probabilities.size() != classes || classes == 0) {
      Fail(ErrorKind::kData, "record '" + r.id + "' has no matching probabilities");
    }
    out << r.id << ',' << (r.is_ood() ? 1 : 0) << ','
        << (r.true_label ? std::to_string(*r.true_label) : std::string("-1"));
    for (double p : r.probabilities) out << ',' << text::FormatDouble(p);
    out << '\n';
  }
}

}  // namespace aprkit
