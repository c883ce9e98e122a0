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

#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vecsum/error.hpp"

namespace vecsum {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline void require_same_dim(const Vector& a, const Vector& b, const char* what) {
  if (a.size() != b.size())
    throw Error(ErrorKind::kDimensionMismatch,
                std::string(what) + ": " + std::to_string(a.size()) + " vs " +
                    std::to_string(b.size()));
}

inline Vector normalized(const Vector& v, const std::string& what = "vector") {
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw Error(ErrorKind::kZeroVector, what + " has zero norm");
  return v / norm;
}

inline double cosine(const Vector& a, const Vector& b) {
  require_same_dim(a, b, "cosine");
  const double na = a.norm();
  const double nb = b.norm();
  if (!(na > 0.0) || !(nb > 0.0))
    throw Error(ErrorKind::kZeroVector, "cosine of a zero vector");
  return a.dot(b) / (na * nb);
}

// Flips v so that its largest-magnitude coordinate (first one on ties) is
// positive.
inline void fix_sign(Vector& v) {
  if (v.size() == 0) return;
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  if (v[best] < 0) v = -v;
}

struct PowerIterationOptions {
  double tol = 1e-10;
  int max_iter = 1000;
};

struct PrincipalComponent {
  Vector direction;  // unit norm, sign-fixed
  double eigenvalue = 0.0;
};

// Uncentered principal directions of the rows of `rows` (the leading
// eigenvectors of rows^T rows), by power iteration with deflation. The start
// vector is the normalized all-ones vector, projected off the components
// already found; standard basis vectors are tried when that projection
// vanishes. Stops early once the remaining spectrum is numerically zero.
inline std::vector<PrincipalComponent> principal_components(
    const Matrix& rows, std::size_t count, PowerIterationOptions opts = {}) {
  std::vector<PrincipalComponent> out;
  const Eigen::Index dim = rows.cols();
  if (rows.rows() == 0 || dim == 0) return out;
  const double scale = rows.squaredNorm();
  if (!(scale > 0.0)) return out;

  auto deflate = [&](Vector& v) {
    // Two Gram-Schmidt passes keep the iterate orthogonal to found components.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& c : out) v -= c.direction.dot(v) * c.direction;
  };

  while (out.size() < count && static_cast<Eigen::Index>(out.size()) < dim) {
    Vector v = Vector::Ones(dim) / std::sqrt(static_cast<double>(dim));
    deflate(v);
    for (Eigen::Index e = 0; v.norm() < 1e-8 && e < dim; ++e) {
      v = Vector::Unit(dim, e);
      deflate(v);
    }
    if (v.norm() < 1e-8) break;
    v.normalize();

    double lambda = 0.0;
    for (int iter = 0; iter < opts.max_iter; ++iter) {
      Vector w = rows.transpose() * (rows * v);
      deflate(w);
      lambda = w.norm();
      if (lambda <= 1e-13 * scale) {
        lambda = 0.0;
        break;
      }
      w /= lambda;
      const double change = (w - v).norm();
      v = std::move(w);
      if (change < opts.tol) break;
    }
    if (lambda == 0.0) break;
    fix_sign(v);
    out.push_back({std::move(v), lambda});
  }
  return out;
}

}  // namespace vecsum
