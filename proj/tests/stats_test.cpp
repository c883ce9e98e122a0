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
#include "vecsum/stats.hpp"

namespace vecsum {
namespace {

TEST(IncompleteBeta, KnownValues) {
  EXPECT_NEAR(stats::incomplete_beta(1, 1, 0.3), 0.3, 1e-14);
  EXPECT_NEAR(stats::incomplete_beta(2, 3, 0.4), 0.5248, 1e-13);  // 1 - (1-x)^3 (1+3x)... closed form
  EXPECT_NEAR(stats::incomplete_beta(0.5, 0.5, 0.5), 0.5, 1e-13);
  EXPECT_EQ(stats::incomplete_beta(3, 4, 0.0), 0.0);
  EXPECT_EQ(stats::incomplete_beta(3, 4, 1.0), 1.0);
  // Symmetry I_x(a, b) = 1 - I_{1-x}(b, a).
  EXPECT_NEAR(stats::incomplete_beta(2.5, 7, 0.2), 1 - stats::incomplete_beta(7, 2.5, 0.8), 1e-14);
}

TEST(StudentT, MatchesIntegratedDensity) {
  for (double df : {1.0, 2.0, 5.0, 12.0, 40.0})
    for (double t : {0.0, 0.3, 1.0, 2.1, 4.5})
      EXPECT_NEAR(stats::student_t_two_sided_p(t, df), testing::simpson_t_two_sided_p(t, df), 1e-9)
          << "t=" << t << " df=" << df;
  // Cauchy: P(|T| > 1) = 1/2.
  EXPECT_NEAR(stats::student_t_two_sided_p(1.0, 1.0), 0.5, 1e-14);
  EXPECT_NEAR(stats::student_t_cdf(-1.0, 1.0), 0.25, 1e-14);
}

TEST(Normal, QuantileInvertsCdf) {
  for (double p : {1e-6, 0.01, 0.2, 0.5, 0.77, 0.999})
    EXPECT_NEAR(stats::normal_cdf(stats::normal_quantile(p)), p, 1e-12 * std::max(1.0, 1 / p));
  EXPECT_NEAR(stats::normal_quantile(0.975), 1.959963984540054, 1e-12);
}

TEST(Descriptive, MeanStddevPearson) {
  const std::vector<double> x = {1, 2, 3, 4};
  const std::vector<double> y = {2, 4, 6, 8.5};
  EXPECT_DOUBLE_EQ(stats::mean(x), 2.5);
  EXPECT_NEAR(stats::stddev(x), std::sqrt(5.0 / 3.0), 1e-15);
  EXPECT_GT(stats::pearson(x, y), 0.99);
  const std::vector<double> flat = {1, 1, 1, 1};
  EXPECT_THROW(stats::pearson(x, flat), Error);
}

TEST(Descriptive, NormalityR2HighForNormalLowForSkewed) {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> g(0, 1);
  std::exponential_distribution<double> e(1);
  std::vector<double> a;
  std::vector<double> b;
  for (int i = 0; i < 400; ++i) {
    a.push_back(g(rng));
    const double z = e(rng);
    b.push_back(z * z * z);
  }
  EXPECT_GT(stats::normal_probability_plot_r2(a), 0.99);
  EXPECT_LT(stats::normal_probability_plot_r2(b), 0.8);
}

TEST(PairedT, HandComputed) {
  // Differences 1, 2, 3: mean 2, sd 1, t = 2 / (1/sqrt 3) = 2 sqrt 3.
  const std::vector<double> a = {2, 4, 6};
  const std::vector<double> b = {1, 2, 3};
  const auto r = stats::paired_t_test(a, b);
  EXPECT_NEAR(r.t_stat, 2 * std::sqrt(3.0), 1e-14);
  EXPECT_EQ(r.df, 2);
  EXPECT_NEAR(r.p_value, testing::simpson_t_two_sided_p(r.t_stat, 2), 1e-10);
}

TEST(PairedT, DegenerateCases) {
  const std::vector<double> a = {1, 2, 3};
  const auto same = stats::paired_t_test(a, a);
  EXPECT_EQ(same.t_stat, 0.0);
  EXPECT_EQ(same.p_value, 1.0);
  const std::vector<double> shifted = {2, 3, 4};
  EXPECT_THROW(stats::paired_t_test(a, shifted), Error);
  const std::vector<double> one = {1};
  EXPECT_THROW(stats::paired_t_test(one, one), Error);
  const std::vector<double> two = {1, 2};
  EXPECT_THROW(stats::paired_t_test(a, two), Error);
}

TEST(Ols, MatchesNormalEquationsAndTextbookErrors) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> g(0, 1);
  Matrix x(60, 4);
  Vector y(60);
  for (int r = 0; r < 60; ++r) {
    x(r, 0) = 1.0;
    for (int c = 1; c < 4; ++c) x(r, c) = g(rng);
    y[r] = 0.5 + 2.0 * x(r, 1) - 1.0 * x(r, 3) + 0.3 * g(rng);
  }
  const auto fit = stats::ols(x, y);
  const auto beta = testing::normal_equations(x, y);
  for (int c = 0; c < 4; ++c) EXPECT_NEAR(fit.coefficients[c], beta[static_cast<std::size_t>(c)], 1e-10);
  // Standard errors from sigma^2 (X^T X)^-1 computed directly.
  const Vector resid = y - x * fit.coefficients;
  const double sigma2 = resid.squaredNorm() / (60 - 4);
  const Matrix cov = sigma2 * (x.transpose() * x).inverse();
  for (int c = 0; c < 4; ++c) {
    EXPECT_NEAR(fit.std_errors[c], std::sqrt(cov(c, c)), 1e-10);
    EXPECT_NEAR(fit.p_values[c], testing::simpson_t_two_sided_p(fit.t_stats[c], 56), 1e-8);
  }
  EXPECT_EQ(fit.df, 56);
  EXPECT_FALSE(fit.ridge);
  EXPECT_LT(fit.p_values[1], 1e-10);
}

TEST(Ols, SingularAndUnderdetermined) {
  Matrix x(5, 2);
  x << 1, 2, 1, 2, 1, 2, 1, 2, 1, 2;
  Vector y = Vector::LinSpaced(5, 0, 1);
  try {
    stats::ols(x, y);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSingularDesign);
  }
  Matrix wide = Matrix::Random(3, 5);
  const Vector y3 = Vector::Ones(3);
  const auto fit = stats::ols(wide, y3, true);
  EXPECT_TRUE(fit.ridge);
  for (int c = 0; c < 5; ++c) EXPECT_EQ(fit.p_values[c], 1.0);
  EXPECT_THROW(stats::ols(wide, y3, false), Error);
}

}  // namespace
}  // namespace vecsum
