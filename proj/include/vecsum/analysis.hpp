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

// Vector-space analyses over embedded clusters and ROUGE results.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "vecsum/corpus.hpp"
#include "vecsum/embeddings.hpp"
#include "vecsum/error.hpp"
#include "vecsum/linalg.hpp"
#include "vecsum/rouge.hpp"
#include "vecsum/selectors.hpp"
#include "vecsum/stats.hpp"

namespace vecsum {

using stats::paired_t_test;
using stats::TTestResult;

struct DistributionStats {
  double mean = 0.0;
  double stddev = 0.0;
  double normality_r2 = 0.0;
  int n = 0;
};

inline DistributionStats distribution_stats(std::span<const double> xs) {
  if (xs.size() < 2)
    throw Error(ErrorKind::kDegenerateDistribution, "need at least 2 samples");
  DistributionStats out;
  out.n = static_cast<int>(xs.size());
  out.mean = stats::mean(xs);
  out.stddev = stats::stddev(xs);
  if (!(out.stddev > 0.0))
    throw Error(ErrorKind::kDegenerateDistribution, "sample has zero variance");
  out.normality_r2 = stats::normal_probability_plot_r2(xs);
  return out;
}

inline std::vector<double> doc_cosines(std::span<const SentenceVector> vectors,
                                       const DocumentVector& doc) {
  std::vector<double> out;
  out.reserve(vectors.size());
  for (const auto& sv : vectors) out.push_back(cosine(sv.v, doc.v));
  return out;
}

inline DistributionStats cosine_distribution(std::span<const SentenceVector> vectors,
                                             const DocumentVector& doc) {
  const auto cos = doc_cosines(vectors, doc);
  return distribution_stats(cos);
}

// Greedy ROUGE-1 oracle: keeps adding the sentence that most increases the
// summary's ROUGE-1 (document order on ties) until the budget is reached.
inline std::vector<std::size_t> rouge_oracle_summary(std::span<const Sentence> sentences,
                                                     const ReferenceSet& refs, int budget = 100) {
  const std::size_t n = sentences.size();
  std::vector<bool> taken(n, false);
  std::vector<std::size_t> picked;
  int total = 0;
  while (total < budget && picked.size() < n) {
    std::size_t best = n;
    double best_score = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (taken[i]) continue;
      picked.push_back(i);
      const double s = refs.score(preprocess(summary_text(sentences, picked), refs.word_limit()), 1);
      picked.pop_back();
      if (s > best_score) {
        best_score = s;
        best = i;
      }
    }
    taken[best] = true;
    picked.push_back(best);
    total += static_cast<int>(sentences[best].word_count());
  }
  return picked;
}

// Residuals of y regressed (with intercept) on x; y - mean(y) when x is
// constant.
inline std::vector<double> linear_residuals(std::span<const double> x, std::span<const double> y) {
  const double mx = stats::mean(x);
  const double my = stats::mean(y);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
  std::vector<double> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] - my - slope * (x[i] - mx);
  return out;
}

struct OptimalSplit {
  std::vector<std::size_t> optimal_indices;  // oracle selection order
  std::vector<bool> is_optimal;              // per sentence
  std::vector<double> cosines;               // per sentence, adjusted if requested
  std::vector<double> optimal;
  std::vector<double> non_optimal;
};

inline OptimalSplit optimal_sentence_split(const DocumentCluster& cluster,
                                           std::span<const SentenceVector> vectors,
                                           const DocumentVector& doc, const ReferenceSet& refs,
                                           bool adjust_for_length, int budget = 100) {
  if (vectors.size() != cluster.sentences.size())
    throw Error(ErrorKind::kIncompleteVectors, "vectors do not cover the cluster");
  OptimalSplit out;
  out.optimal_indices = rouge_oracle_summary(cluster.sentences, refs, budget);
  out.is_optimal.assign(cluster.sentences.size(), false);
  for (auto i : out.optimal_indices) out.is_optimal[i] = true;
  out.cosines = doc_cosines(vectors, doc);
  if (adjust_for_length) {
    std::vector<double> words;
    for (const auto& s : cluster.sentences) words.push_back(static_cast<double>(s.word_count()));
    out.cosines = linear_residuals(words, out.cosines);
  }
  for (std::size_t i = 0; i < out.cosines.size(); ++i)
    (out.is_optimal[i] ? out.optimal : out.non_optimal).push_back(out.cosines[i]);
  return out;
}

// Pearson r between log(1 + rouge) and cosine.
inline double rouge_cosine_correlation(std::span<const std::pair<double, double>> rouge_cosine) {
  if (rouge_cosine.size() < 3)
    throw Error(ErrorKind::kDegenerateDistribution, "correlation needs at least 3 pairs");
  std::vector<double> r;
  std::vector<double> c;
  for (const auto& [rouge, cos] : rouge_cosine) {
    r.push_back(std::log1p(rouge));
    c.push_back(cos);
  }
  return stats::pearson(r, c);
}

// Hat values of a simple regression on x: 1/n + (x - mean)^2 / Sxx.
inline std::vector<double> simple_leverage(std::span<const double> x) {
  const double m = stats::mean(x);
  double sxx = 0.0;
  for (double v : x) sxx += (v - m) * (v - m);
  std::vector<double> out;
  const double n = static_cast<double>(x.size());
  for (double v : x) out.push_back(1.0 / n + (sxx > 0.0 ? (v - m) * (v - m) / sxx : 0.0));
  return out;
}

inline double bonferroni_threshold(double alpha, std::size_t tests) {
  return alpha / static_cast<double>(tests);
}

struct RegressionReport {
  double intercept = 0.0;
  Vector coefficients;  // one per dimension
  Vector p_values;
  double alpha = 0.05;
  double bonferroni_threshold = 0.0;
  std::vector<int> significant_dims;
  bool ridge = false;
  int samples = 0;
};

// OLS of `y` on the columns of `features` plus an intercept; each dimension
// tested two-sided and compared against alpha / dims.
inline RegressionReport regress_dimensions(const Matrix& features, const Vector& y,
                                           double alpha = 0.05, bool allow_ridge = true) {
  const Eigen::Index n = features.rows();
  const Eigen::Index d = features.cols();
  if (d == 0) throw Error(ErrorKind::kSingularDesign, "no dimensions to regress on");
  Matrix design(n, d + 1);
  design.col(0).setOnes();
  design.rightCols(d) = features;
  const auto fit = stats::ols(design, y, allow_ridge);
  RegressionReport r;
  r.samples = static_cast<int>(n);
  r.intercept = fit.coefficients[0];
  r.coefficients = fit.coefficients.tail(d);
  r.p_values = fit.p_values.tail(d);
  r.alpha = alpha;
  r.bonferroni_threshold = bonferroni_threshold(alpha, static_cast<std::size_t>(d));
  r.ridge = fit.ridge;
  for (Eigen::Index j = 0; j < d; ++j)
    if (r.p_values[j] < r.bonferroni_threshold) r.significant_dims.push_back(static_cast<int>(j));
  return r;
}

// One sample per sentence: features are sentence vector minus its cluster's
// document vector, response is the sentence's isolated ROUGE.
struct RegressionSample {
  Vector sentence;
  Vector document;
  double isolated_rouge = 0.0;
};

inline RegressionReport dimension_regression(std::span<const RegressionSample> samples,
                                             double alpha = 0.05, bool allow_ridge = true) {
  if (samples.empty()) throw Error(ErrorKind::kSingularDesign, "no regression samples");
  const Eigen::Index d = samples.front().sentence.size();
  Matrix x(static_cast<Eigen::Index>(samples.size()), d);
  Vector y(static_cast<Eigen::Index>(samples.size()));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    require_same_dim(samples[i].sentence, samples[i].document, "regression sample");
    if (samples[i].sentence.size() != d)
      throw Error(ErrorKind::kDimensionMismatch, "regression samples differ in dimension");
    x.row(static_cast<Eigen::Index>(i)) = (samples[i].sentence - samples[i].document).transpose();
    y[static_cast<Eigen::Index>(i)] = samples[i].isolated_rouge;
  }
  return regress_dimensions(x, y, alpha, allow_ridge);
}

inline std::vector<GreedyStep> greedy_trace(const SelectorInput& input) {
  std::vector<GreedyStep> trace;
  select_greedy(input, &trace);
  return trace;
}

// sqrt(i^2 + 1 + 2 i x), the denominator of the greedy step score.
inline double greedy_denominator(int i, double x) {
  const double v = static_cast<double>(i) * i + 1.0 + 2.0 * i * x;
  if (i < 1 || x < -1.0 || x > 1.0 || v < 0.0)
    throw Error(ErrorKind::kConfig, "denominator defined for i >= 1 and x in [-1, 1]");
  return std::sqrt(v);
}

inline std::vector<double> denominator_surface(int i, std::span<const double> xs) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(greedy_denominator(i, x));
  return out;
}

// Evenly spaced grid over [-1, 1].
inline std::vector<double> unit_interval_grid(int points) {
  std::vector<double> xs;
  for (int k = 0; k < points; ++k)
    xs.push_back(points == 1 ? 0.0 : -1.0 + 2.0 * k / (points - 1));
  return xs;
}

struct CellResult {
  std::string cluster_id;
  std::string selector;
  std::string vector_function;
  double rouge1 = 0.0;
  double rouge2 = 0.0;
};

struct DocvecDelta {
  std::string selector;
  std::string vector_function;
  double delta = 0.0;  // (docvec-avg - simple) mean ROUGE-1, x100
};

// Per (selector, vector function): mean ROUGE-1 with docvec-avg minus mean
// ROUGE-1 with the simple document vector, on a percentage scale.
inline std::vector<DocvecDelta> docvec_comparison(std::span<const CellResult> simple,
                                                  std::span<const CellResult> avg) {
  using Key = std::tuple<std::string, std::string, std::string>;
  auto index = [](std::span<const CellResult> rs) {
    std::map<Key, double> m;
    for (const auto& r : rs) m[{r.selector, r.vector_function, r.cluster_id}] = r.rouge1;
    return m;
  };
  const auto a = index(simple);
  const auto b = index(avg);
  if (a.size() != b.size())
    throw Error(ErrorKind::kIncompleteResults, "result sets cover different cells");
  std::map<std::pair<std::string, std::string>, std::pair<double, int>> sums;
  for (const auto& [key, value] : a) {
    auto it = b.find(key);
    if (it == b.end())
      throw Error(ErrorKind::kIncompleteResults,
                  "docvec-avg results lack " + std::get<0>(key) + "/" + std::get<1>(key) + "/" +
                      std::get<2>(key));
    auto& [sum, count] = sums[{std::get<0>(key), std::get<1>(key)}];
    sum += it->second - value;
    ++count;
  }
  std::vector<DocvecDelta> out;
  for (const auto& [key, sc] : sums)
    out.push_back({key.first, key.second, 100.0 * sc.first / sc.second});
  return out;
}

}  // namespace vecsum
