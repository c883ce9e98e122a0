// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "vecsum/analysis.hpp"

namespace vecsum {
namespace {

TEST(Analysis, Bonferroni) {
  EXPECT_DOUBLE_EQ(bonferroni_threshold(0.05, 300), 0.05 / 300);
  EXPECT_DOUBLE_EQ(bonferroni_threshold(0.05, 1), 0.05);
}

TEST(Analysis, DenominatorSurface) {
  EXPECT_DOUBLE_EQ(greedy_denominator(1, -1.0), 0.0);
  EXPECT_DOUBLE_EQ(greedy_denominator(1, 1.0), 2.0);
  EXPECT_DOUBLE_EQ(greedy_denominator(3, 0.0), std::sqrt(10.0));
  EXPECT_THROW(greedy_denominator(0, 0.5), Error);
  EXPECT_THROW(greedy_denominator(2, 1.5), Error);
  const auto xs = unit_interval_grid(5);
  EXPECT_EQ(xs, (std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0}));
  const auto ys = denominator_surface(2, xs);
  for (std::size_t k = 0; k < xs.size(); ++k) EXPECT_NEAR(ys[k], std::sqrt(5.0 + 4.0 * xs[k]), 1e-15);
  // Monotone in x for every i.
  for (int i = 1; i < 8; ++i) {
    const auto s = denominator_surface(i, unit_interval_grid(41));
    EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
  }
}

TEST(Analysis, RegressionRecoversPlantedDimension) {
  std::mt19937_64 rng(51);
  std::normal_distribution<double> g(0, 1);
  std::vector<RegressionSample> samples;
  for (int i = 0; i < 400; ++i) {
    RegressionSample s;
    s.sentence = Vector(6);
    for (int k = 0; k < 6; ++k) s.sentence[k] = g(rng);
    s.document = Vector::Constant(6, 0.25);
    s.isolated_rouge = 0.1 + 0.8 * (s.sentence[2] - 0.25) + 0.05 * g(rng);
    samples.push_back(std::move(s));
  }
  const auto r = dimension_regression(samples);
  EXPECT_EQ(r.samples, 400);
  EXPECT_DOUBLE_EQ(r.bonferroni_threshold, 0.05 / 6);
  EXPECT_EQ(r.significant_dims, std::vector<int>{2});
  EXPECT_NEAR(r.coefficients[2], 0.8, 0.02);
  EXPECT_NEAR(r.intercept, 0.1, 0.02);
}

TEST(Analysis, RegressionRejectsMixedDimensions) {
  std::vector<RegressionSample> samples(2);
  samples[0] = {Vector::Ones(3), Vector::Zero(3), 0.1};
  samples[1] = {Vector::Ones(4), Vector::Zero(4), 0.2};
  EXPECT_THROW(dimension_regression(samples), Error);
  EXPECT_THROW(dimension_regression(std::vector<RegressionSample>{}), Error);
}

TEST(Analysis, DistributionStatsAndDegenerate) {
  const std::vector<double> xs = {0.1, 0.2, 0.3, 0.4};
  const auto d = distribution_stats(xs);
  EXPECT_NEAR(d.mean, 0.25, 1e-15);
  EXPECT_NEAR(d.stddev, std::sqrt(0.05 / 3), 1e-15);
  EXPECT_EQ(d.n, 4);
  const std::vector<double> flat = {0.3, 0.3};
  EXPECT_THROW(distribution_stats(flat), Error);
  const std::vector<double> one = {0.3};
  EXPECT_THROW(distribution_stats(one), Error);
}

TEST(Analysis, LeverageSumsToTwo) {
  const std::vector<double> x = {1, 2, 4, 8, 16};
  const auto h = simple_leverage(x);
  double sum = 0.0;
  for (double v : h) sum += v;
  EXPECT_NEAR(sum, 2.0, 1e-14);  // trace of the hat matrix = parameters
  EXPECT_EQ(std::max_element(h.begin(), h.end()) - h.begin(), 4);
}

TEST(Analysis, LinearResidualsAreOrthogonalToX) {
  const std::vector<double> x = {3, 5, 9, 12};
  const std::vector<double> y = {0.2, 0.1, 0.5, 0.4};
  const auto r = linear_residuals(x, y);
  double sr = 0.0;
  double sxr = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    sr += r[i];
    sxr += x[i] * r[i];
  }
  EXPECT_NEAR(sr, 0.0, 1e-14);
  EXPECT_NEAR(sxr, 0.0, 1e-13);
}

TEST(Analysis, DocvecComparison) {
  const std::vector<CellResult> simple = {{"c1", "greedy", "arora", 0.30, 0}, {"c2", "greedy", "arora", 0.20, 0}};
  const std::vector<CellResult> avg = {{"c2", "greedy", "arora", 0.25, 0}, {"c1", "greedy", "arora", 0.31, 0}};
  const auto d = docvec_comparison(simple, avg);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_NEAR(d[0].delta, 100.0 * (0.01 + 0.05) / 2, 1e-12);
  const std::vector<CellResult> partial = {avg[0]};
  try {
    docvec_comparison(simple, partial);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIncompleteResults);
  }
  const std::vector<CellResult> other = {avg[0], {"c9", "greedy", "arora", 0.1, 0}};
  EXPECT_THROW(docvec_comparison(simple, other), Error);
}

TEST(Analysis, RougeCosineCorrelation) {
  const std::vector<std::pair<double, double>> pts = {{0.0, 0.1}, {0.2, 0.3}, {0.5, 0.6}, {0.9, 0.7}};
  std::vector<double> a;
  std::vector<double> b;
  for (auto [r, c] : pts) {
    a.push_back(std::log1p(r));
    b.push_back(c);
  }
  EXPECT_DOUBLE_EQ(rouge_cosine_correlation(pts), stats::pearson(a, b));
  EXPECT_THROW(rouge_cosine_correlation(std::vector<std::pair<double, double>>(2)), Error);
}

TEST(Analysis, OracleSplitMarksGreedyRougePicks) {
  const auto cluster = make_cluster(
      "o", {{"The river flooded the town.", "Cats sleep a lot.", "Rain fell for days near the river."}},
      {"Rain made the river flood the town."});
  const ReferenceSet refs(cluster.references);
  std::vector<SentenceVector> vecs;
  for (std::size_t i = 0; i < 3; ++i) vecs.push_back({cluster.sentences[i].id, Vector::Unit(3, static_cast<Eigen::Index>(i))});
  const DocumentVector doc{"o", Vector::Ones(3)};
  const auto split = optimal_sentence_split(cluster, vecs, doc, refs, false, 8);
  // First pick: sentence 0 has the most reference unigrams; 5 words < 8, so a
  // second pick follows (sentence 2 adds "rain").
  EXPECT_EQ(split.optimal_indices, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(split.optimal.size(), 2u);
  EXPECT_EQ(split.non_optimal.size(), 1u);
  EXPECT_NEAR(split.non_optimal[0], 1 / std::sqrt(3.0), 1e-15);
  const auto adj = optimal_sentence_split(cluster, vecs, doc, refs, true, 8);
  for (double c : adj.cosines) EXPECT_NEAR(c, 0.0, 1e-12);  // equal cosines leave no residual
  vecs.pop_back();
  EXPECT_THROW(optimal_sentence_split(cluster, vecs, doc, refs, false), Error);
}

}  // namespace
}  // namespace vecsum
