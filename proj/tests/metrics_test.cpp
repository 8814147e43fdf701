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

#include "aprkit/error.hpp"
#include "aprkit/metrics.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "metrics_oracle.hpp"

namespace aprkit {
namespace {

ScoredRecord Id(std::int64_t truth, std::int64_t pred, double score) {
  ScoredRecord r;
  r.true_label = truth;
  r.predicted_label = pred;
  r.score = score;
  return r;
}

ScoredRecord Ood(double score) {
  ScoredRecord r;
  r.score = score;
  return r;
}

// 3 in-distribution records (correct 0.9, correct 0.5, wrong 0.8) and two
// OOD records (0.7, 0.3).
std::vector<ScoredRecord> FiveRecords() {
  return {Id(1, 1, 0.9), Id(2, 2, 0.5), Id(0, 3, 0.8), Ood(0.7), Ood(0.3)};
}

TEST(CorruptionError, Examples) {
  const std::vector<double> ref{0.2, 0.4, 0.6, 0.8, 1.0};
  EXPECT_DOUBLE_EQ(CorruptionError(ref, ref), 1.0);
  EXPECT_DOUBLE_EQ(CorruptionError(std::vector<double>(5, 0.0), ref), 0.0);
  EXPECT_DOUBLE_EQ(CorruptionError(std::vector<double>{0.1, 0.2, 0.3, 0.4, 0.5}, ref), 0.5);
  EXPECT_THROW(CorruptionError(ref, std::vector<double>(5, 0.0)), Error);
  EXPECT_THROW(CorruptionError(std::vector<double>(4, 0.1), ref), Error);
}

TEST(CorruptionError, ScaleInvariant) {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> d(0.01, 0.2);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> e(5), r(5);
    for (int s = 0; s < 5; ++s) { e[s] = d(gen); r[s] = d(gen); }
    const double c = 0.5 + t * 0.03;
    std::vector<double> es(5), rs(5);
    for (int s = 0; s < 5; ++s) { es[s] = c * e[s]; rs[s] = c * r[s]; }
    EXPECT_NEAR(CorruptionError(e, r), CorruptionError(es, rs), 1e-12);
  }
}

TEST(MeanCorruptionError, Examples) {
  const std::vector<double> standard{79, 80, 82, 82, 90, 84, 80, 86, 81, 75, 65, 79, 91, 77, 80};
  EXPECT_NEAR(MeanCorruptionError(standard), 1211.0 / 15.0, 1e-12);
  EXPECT_NEAR(MeanCorruptionError(standard), 80.6, 0.5);
  EXPECT_DOUBLE_EQ(MeanCorruptionError(std::vector<double>(4, 0.3)), 0.3);
  EXPECT_DOUBLE_EQ(MeanCorruptionError(std::vector<double>{0, 100}), 50.0);
  EXPECT_THROW(MeanCorruptionError(std::vector<double>{}), Error);
}

TEST(CorruptionTable, ReadAndEvaluate) {
  std::stringstream errors("corruption,s1,s2,s3,s4,s5\nfog,0.1,0.2,0.3,0.4,0.5\nblur,0.2,0.2,0.2,0.2,0.2\n");
  std::stringstream ref("corruption,s1,s2,s3,s4,s5\nblur,0.5,0.5,0.5,0.5,0.5\nfog,0.2,0.4,0.6,0.8,1.0\n");
  const CorruptionReport report = EvaluateCorruption(ReadCorruptionTable(errors), ReadCorruptionTable(ref));
  ASSERT_EQ(report.ce.size(), 2u);
  EXPECT_EQ(report.ce[0].first, "fog");
  EXPECT_DOUBLE_EQ(report.ce[0].second, 0.5);
  EXPECT_DOUBLE_EQ(report.ce[1].second, 0.4);
  EXPECT_DOUBLE_EQ(report.mce, 0.45);
}

TEST(CorruptionTable, RejectsMalformedInput) {
  for (const char* text : {"", "name,s1\n", "corruption,s1,s2,s3,s4,s5\nfog,0.1,0.2\n",
                           "corruption,s1,s2,s3,s4,s5\nfog,0.1,0.2,0.3,0.4,1.5\n",
                           "corruption,s1,s2,s3,s4,s5\nfog,0.1,0.2,0.3,0.4,x\n",
                           "corruption,s1,s2,s3,s4,s5\nfog,0,0,0,0,0\nfog,0,0,0,0,0\n"}) {
    std::stringstream in(text);
    EXPECT_THROW(ReadCorruptionTable(in), Error) << text;
  }
  std::stringstream errors("corruption,s1,s2,s3,s4,s5\nsnow,0.1,0.2,0.3,0.4,0.5\n");
  std::stringstream ref("corruption,s1,s2,s3,s4,s5\nfog,0.2,0.4,0.6,0.8,1.0\n");
  EXPECT_THROW(EvaluateCorruption(ReadCorruptionTable(errors), ReadCorruptionTable(ref)), Error);
}

TEST(Auroc, Examples) {
  EXPECT_EQ(Auroc(std::vector<double>(4, 0.9), std::vector<double>(3, 0.1)), 1.0);
  EXPECT_EQ(Auroc(std::vector<double>{0.2, 0.5, 0.7}, std::vector<double>{0.7, 0.2, 0.5}), 0.5);
  EXPECT_EQ(Auroc(std::vector<double>{0.8, 0.4}, std::vector<double>{0.6}), 0.5);
  EXPECT_THROW(Auroc(std::vector<double>{}, std::vector<double>{0.1}), Error);
}

TEST(Auroc, MatchesPairwiseOracleAndIsAntisymmetric) {
  std::mt19937_64 gen(2);
  for (int t = 0; t < 300; ++t) {
    std::vector<double> in(1 + gen() % 15), out(1 + gen() % 15);
    for (double& s : in) s = static_cast<double>(gen() % 7) / 6.0;
    for (double& s : out) s = static_cast<double>(gen() % 7) / 6.0;
    EXPECT_NEAR(Auroc(in, out), oracle::PairwiseAuroc(in, out), 1e-12);
    std::vector<double> a(5), b(5);
    for (double& s : a) s = std::uniform_real_distribution<double>()(gen);
    for (double& s : b) s = std::uniform_real_distribution<double>()(gen);
    EXPECT_NEAR(Auroc(a, b) + Auroc(b, a), 1.0, 1e-12);
  }
}

TEST(CcrFpr, Examples) {
  const auto records = FiveRecords();
  const CcrFpr at06 = CcrFprAt(records, 0.6);
  EXPECT_DOUBLE_EQ(at06.ccr, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(at06.fpr, 0.5);
  const CcrFpr floor = CcrFprAt(records, 0.0);
  EXPECT_DOUBLE_EQ(floor.fpr, 1.0);
  EXPECT_DOUBLE_EQ(floor.ccr, 2.0 / 3.0);
  const CcrFpr ceiling = CcrFprAt(records, 1.01);
  EXPECT_EQ(ceiling.ccr, 0.0);
  EXPECT_EQ(ceiling.fpr, 0.0);
  EXPECT_THROW(CcrFprAt(std::vector<ScoredRecord>{Id(1, 1, 0.5)}, 0.5), Error);
  EXPECT_THROW(CcrFprAt(std::vector<ScoredRecord>{Ood(0.5)}, 0.5), Error);
}

TEST(Oscr, Examples) {
  EXPECT_DOUBLE_EQ(Oscr(std::vector<ScoredRecord>{Id(1, 1, 0.9), Id(2, 2, 0.8), Ood(0.2), Ood(0.1)}), 1.0);
  const auto five = FiveRecords();
  EXPECT_DOUBLE_EQ(Oscr(five), oracle::SweepOscr(five));
  // Curve points (0,0) (0,1/3) (0,1/3) (.5,1/3) (.5,2/3) (1,2/3).
  EXPECT_NEAR(Oscr(five), 0.5 * 0.5 * (1.0 / 3.0 + 1.0 / 3.0) + 0.5 * (2.0 / 3.0), 1e-15);
  // Identical score for everyone: one diagonal step to (1, accuracy).
  const std::vector<ScoredRecord> tied{Id(1, 1, 0.5), Id(1, 0, 0.5), Ood(0.5), Ood(0.5)};
  EXPECT_DOUBLE_EQ(Oscr(tied), 0.5 * 0.5);
}

TEST(OpenSet, MatchesThresholdSweepOracleOnRandomSets) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto records = oracle::RandomRecords(gen, 2 + gen() % 19);
    EXPECT_DOUBLE_EQ(Oscr(records), oracle::SweepOscr(records)) << trial;
    std::set<double> thresholds{-1.0, 2.0};
    for (const auto& r : records) thresholds.insert(r.score);
    double prev_ccr = 2.0, prev_fpr = 2.0;
    for (double t : thresholds) {
      const CcrFpr got = CcrFprAt(records, t);
      const auto [ccr, fpr] = oracle::CountAt(records, t);
      EXPECT_DOUBLE_EQ(got.ccr, ccr);
      EXPECT_DOUBLE_EQ(got.fpr, fpr);
      EXPECT_LE(got.ccr, prev_ccr);
      EXPECT_LE(got.fpr, prev_fpr);
      prev_ccr = got.ccr;
      prev_fpr = got.fpr;
    }
  }
}

TEST(Blend, Examples) {
  const std::vector<double> p{0.7, 0.2, 0.1}, a{0.1, 0.1, 0.8};
  EXPECT_EQ(BlendPredictions(p, a, 1.0), p);
  EXPECT_EQ(BlendPredictions(p, a, 0.0), a);
  EXPECT_EQ(BlendPredictions(std::vector<double>{1, 0}, std::vector<double>{0, 1}, 0.5),
            (std::vector<double>{0.5, 0.5}));
  const auto mixed = BlendPredictions(p, a, 0.3);
  double sum = 0.0;
  for (double v : mixed) { EXPECT_GE(v, 0.0); sum += v; }
  EXPECT_NEAR(sum, 1.0, 1e-12);
  const auto same = BlendPredictions(p, p, 0.4);
  EXPECT_EQ(std::max_element(same.begin(), same.end()) - same.begin(), 0);
  EXPECT_THROW(BlendPredictions(p, std::vector<double>{0.5, 0.5}, 0.5), Error);
  EXPECT_THROW(BlendPredictions(p, a, 1.5), Error);
  EXPECT_THROW(BlendPredictions(std::vector<double>{0.5, 0.6}, std::vector<double>{0.5, 0.5}, 0.5), Error);
}

TEST(ScoreFiles, ProbabilityFormatRoundTrips) {
  std::stringstream in(
      "id,is_ood,true_label,p0,p1,p2\n"
      "a,0,2,0.1,0.2,0.7\n"
      "b,1,-1,0.5,0.25,0.25\n"
      "c,0,0,0.6,0.3,0.1\n");
  const auto records = ReadScoredRecords(in);
  ASSERT_EQ(records.size(), 3u);
  EXPECT_TRUE(records[0].correct());
  EXPECT_EQ(records[0].predicted_label, 2);
  EXPECT_DOUBLE_EQ(records[0].score, 0.7);
  EXPECT_TRUE(records[1].is_ood());
  std::stringstream out;
  WriteProbabilityRecords(out, records);
  const auto again = ReadScoredRecords(out);
  ASSERT_EQ(again.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(again[k].id, records[k].id);
    EXPECT_EQ(again[k].true_label, records[k].true_label);
    EXPECT_EQ(again[k].probabilities, records[k].probabilities);
  }
}

TEST(ScoreFiles, PredictionFormatAndErrors) {
  std::stringstream in("id,is_ood,true_label,pred_label,score\nx,0,3,3,0.9\ny,1,,0,0.4\n");
  const auto records = ReadScoredRecords(in);
  ASSERT_EQ(records.size(), 2u);
  EXPECT_TRUE(records[0].correct());
  EXPECT_TRUE(records[1].is_ood());
  EXPECT_DOUBLE_EQ(AurocFromRecords(records), 1.0);
  for (const char* text : {"", "id,label\n", "id,is_ood,true_label,p0,p1\na,0,1,0.5\n",
                           "id,is_ood,true_label,p0,p1\na,0,1,0.5,0.6\n",
                           "id,is_ood,true_label,p0,p1\na,2,1,0.5,0.5\n",
                           "id,is_ood,true_label,pred_label,score\na,0,1,1,1.5\n"}) {
    std::stringstream bad(text);
    EXPECT_THROW(ReadScoredRecords(bad), Error) << text;
  }
}

}  // namespace
}  // namespace aprkit
