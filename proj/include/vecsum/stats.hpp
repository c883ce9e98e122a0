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

// Small statistics toolkit: regularized incomplete beta, Student-t tails,
// normal quantiles, Pearson correlation, OLS with per-coefficient t-tests,
// paired t-tests.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "vecsum/error.hpp"
#include "vecsum/linalg.hpp"

namespace vecsum::stats {

namespace detail {

// Continued fraction for the incomplete beta (modified Lentz).
inline double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 10000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace detail

// I_x(a, b).
inline double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw Error(ErrorKind::kConfig, "incomplete_beta: a, b must be > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * detail::beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * detail::beta_continued_fraction(b, a, 1.0 - x) / b;
}

// P(|T| >= |t|) for T ~ Student-t(df).
inline double student_t_two_sided_p(double t, double df) {
  if (!std::isfinite(t)) return 0.0;
  const double x = df / (df + t * t);
  return std::clamp(incomplete_beta(df / 2.0, 0.5, x), 0.0, 1.0);
}

inline double student_t_cdf(double t, double df) {
  const double tail = 0.5 * student_t_two_sided_p(t, df);
  return t >= 0 ? 1.0 - tail : tail;
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// Acklam's rational approximation followed by one Halley step.
inline double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorKind::kConfig, "normal_quantile needs 0 < p < 1");
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double kLow = 0.02425;
  double x = 0.0;
  if (p < kLow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - kLow) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(x * x / 2.0);
  return x - u / (1.0 + x * u / 2.0);
}

inline double mean(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

// Sample (n - 1) standard deviation.
inline double stddev(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

inline double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw Error(ErrorKind::kDegenerateDistribution, "pearson needs two equal-length samples");
  const double mx = mean(xs);
  const double my = mean(ys);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (!(sxx > 0.0) || !(syy > 0.0))
    throw Error(ErrorKind::kDegenerateDistribution, "zero variance in correlation");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

// Squared correlation between the sorted sample and Blom normal scores
// Phi^-1((i - 3/8) / (n + 1/4)).
inline double normal_probability_plot_r2(std::span<const double> xs) {
  std::vector<double> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::vector<double> q(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    q[i] = normal_quantile((static_cast<double>(i + 1) - 0.375) / (n + 0.25));
  const double r = pearson(sorted, q);
  return r * r;
}

struct TTestResult {
  double t_stat = 0.0;
  double p_value = 1.0;
  int df = 0;
  double mean_diff = 0.0;
};

// Two-sided paired t-test on a - b.
inline TTestResult paired_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2)
    throw Error(ErrorKind::kDegenerateDistribution,
                "paired t-test needs two equal-length samples of size >= 2");
  std::vector<double> diff(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
  TTestResult r;
  r.df = static_cast<int>(diff.size()) - 1;
  r.mean_diff = mean(diff);
  const bool all_zero = std::all_of(diff.begin(), diff.end(), [](double x) { return x == 0.0; });
  if (all_zero) return r;
  const double sd = stddev(diff);
  if (!(sd > 0.0))
    throw Error(ErrorKind::kDegenerateDistribution, "paired differences have zero variance");
  r.t_stat = r.mean_diff / (sd / std::sqrt(static_cast<double>(diff.size())));
  r.p_value = student_t_two_sided_p(r.t_stat, r.df);
  return r;
}

struct OlsFit {
  Vector coefficients;
  Vector std_errors;
  Vector t_stats;
  Vector p_values;
  int df = 0;
  double sigma2 = 0.0;
  bool ridge = false;
};

// Ordinary least squares of y on `design` (include a ones column for an
// intercept). Column-pivoted QR; rank deficiency raises SingularDesign.
// When rows <= cols and allow_ridge is set, returns a ridge solution with
// p-values of 1 and `ridge` set.
inline OlsFit ols(const Matrix& design, const Vector& y, bool allow_ridge = true) {
  const Eigen::Index n = design.rows();
  const Eigen::Index p = design.cols();
  if (y.size() != n) throw Error(ErrorKind::kDimensionMismatch, "ols: y length differs from rows");
  OlsFit fit;
  if (n <= p) {
    if (!allow_ridge)
      throw Error(ErrorKind::kSingularDesign, "ols: " + std::to_string(n) + " samples for " +
                                                  std::to_string(p) + " parameters");
    const Matrix xtx = design.transpose() * design;
    const double lambda = 1e-6 * std::max(xtx.trace() / static_cast<double>(p), 1e-12);
    const Matrix reg = xtx + lambda * Matrix::Identity(p, p);
    fit.coefficients = reg.ldlt().solve(design.transpose() * y);
    fit.std_errors = Vector::Constant(p, std::numeric_limits<double>::quiet_NaN());
    fit.t_stats = Vector::Zero(p);
    fit.p_values = Vector::Ones(p);
    fit.ridge = true;
    return fit;
  }
  Eigen::ColPivHouseholderQR<Matrix> qr(design);
  if (qr.rank() < p) throw Error(ErrorKind::kSingularDesign, "ols: design matrix is rank deficient");
  fit.coefficients = qr.solve(y);
  const Vector resid = y - design * fit.coefficients;
  fit.df = static_cast<int>(n - p);
  fit.sigma2 = resid.squaredNorm() / fit.df;
  // (X^T X)^-1 = P R^-1 R^-T P^T.
  const Matrix r = qr.matrixQR().topLeftCorner(p, p).triangularView<Eigen::Upper>();
  const Matrix rinv = r.triangularView<Eigen::Upper>().solve(Matrix::Identity(p, p));
  const Matrix inv_perm = rinv * rinv.transpose();
  const auto& perm = qr.colsPermutation();
  const Matrix xtx_inv = perm * inv_perm * perm.transpose();
  fit.std_errors = (fit.sigma2 * xtx_inv.diagonal()).cwiseSqrt();
  fit.t_stats = Vector(p);
  fit.p_values = Vector(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    const double se = fit.std_errors[j];
    fit.t_stats[j] = se > 0.0 ? fit.coefficients[j] / se
                              : std::copysign(std::numeric_limits<double>::infinity(),
                                              fit.coefficients[j]);
    fit.p_values[j] = se > 0.0 ? student_t_two_sided_p(fit.t_stats[j], fit.df)
                               : (fit.coefficients[j] == 0.0 ? 1.0 : 0.0);
  }
  return fit;
}

}  // namespace vecsum::stats
