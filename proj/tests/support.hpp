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

// Toy-cluster generators and independent reference implementations used by
// the unit and acceptance tests. Nothing here calls into the code under test
// except for plain data types.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <unistd.h>

#include "vecsum/corpus.hpp"
#include "vecsum/embeddings.hpp"
#include "vecsum/selectors.hpp"

namespace vecsum::testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("vecsum-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

  std::filesystem::path write(const std::string& name, const std::string& content) const {
    const auto p = path_ / name;
    std::filesystem::create_directories(p.parent_path());
    std::ofstream(p, std::ios::binary) << content;
    return p;
  }

 private:
  std::filesystem::path path_;
};

inline std::filesystem::path source_dir() { return VECSUM_SOURCE_DIR; }

inline Vector random_unit(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = g(rng);
  return v / v.norm();
}

inline Sentence make_sentence(int index, int words, std::string cluster = "toy") {
  std::string text;
  for (int w = 0; w < words; ++w) text += (w ? " w" : "w") + std::to_string(index);
  return Sentence{SentenceId{std::move(cluster), 0, index}, text, tokenize(text)};
}

struct Toy {
  std::vector<Sentence> sentences;
  std::vector<SentenceVector> vectors;
  DocumentVector doc;

  SelectorInput input(int budget = 100, std::uint64_t seed = 0) const {
    return SelectorInput{sentences, vectors, doc, budget, seed};
  }
};

// n sentences with lengths in [lo, hi]; the document vector is the
// normalized mean plus noise so cosines spread out.
inline Toy random_toy(std::mt19937_64& rng, int n, int dim, int lo, int hi) {
  Toy t;
  std::uniform_int_distribution<int> len(lo, hi);
  Vector mean = Vector::Zero(dim);
  for (int i = 0; i < n; ++i) {
    t.sentences.push_back(make_sentence(i, len(rng)));
    Vector v = random_unit(rng, dim);
    mean += v;
    t.vectors.push_back({t.sentences.back().id, v});
  }
  Vector d = mean / static_cast<double>(n) + 0.3 * random_unit(rng, dim);
  t.doc = DocumentVector{"toy", d / d.norm(), DocvecStrategy::kSimple};
  return t;
}

// cos(normalize(sum of unit vectors), doc), summed in the order given.
inline double direct_objective(const std::vector<std::size_t>& idx, const Toy& t) {
  Vector sum = Vector::Zero(t.doc.v.size());
  for (auto i : idx) sum += t.vectors[i].v / t.vectors[i].v.norm();
  return sum.dot(t.doc.v) / (sum.norm() * t.doc.v.norm());
}

inline int words_of(const std::vector<std::size_t>& idx, const Toy& t) {
  int total = 0;
  for (auto i : idx) total += static_cast<int>(t.sentences[i].tokens.size());
  return total;
}

// All subsets of {0..n-1} (sorted index lists) that fill the budget:
// total >= budget and dropping the longest member falls short. If the whole
// set is short of the budget, the whole set is the only candidate.
inline std::vector<std::vector<std::size_t>> budget_filling_subsets(const Toy& t, int budget) {
  const std::size_t n = t.sentences.size();
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  if (words_of(all, t) < budget) return {all};
  std::vector<std::vector<std::size_t>> out;
  for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
    std::vector<std::size_t> s;
    int longest = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) {
        s.push_back(i);
        longest = std::max(longest, static_cast<int>(t.sentences[i].tokens.size()));
      }
    const int total = words_of(s, t);
    if (total >= budget && total - longest < budget) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct SubsetOptimum {
  std::vector<std::size_t> members;
  double value = 0.0;
};

inline SubsetOptimum exhaustive_max_objective(const Toy& t, int budget) {
  SubsetOptimum best{{}, -std::numeric_limits<double>::infinity()};
  for (const auto& s : budget_filling_subsets(t, budget)) {
    const double v = direct_objective(s, t);
    if (v > best.value) best = {s, v};
  }
  return best;
}

inline double mean_pairwise_cosine(const std::vector<std::size_t>& s, const Toy& t) {
  if (s.size() < 2) return 0.0;
  double sum = 0.0;
  int pairs = 0;
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b, ++pairs) {
      const auto& x = t.vectors[s[a]].v;
      const auto& y = t.vectors[s[b]].v;
      sum += x.dot(y) / (x.norm() * y.norm());
    }
  return sum / pairs;
}

// Naive average linkage: every step recomputes every cluster-pair average
// from the point distances. Ties go to the pair with the lexicographically
// smallest (min member, min member).
struct NaiveMerge {
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
  double distance;
};

inline std::vector<NaiveMerge> naive_average_linkage(const std::vector<Vector>& pts) {
  const std::size_t n = pts.size();
  auto dist = [&](std::size_t a, std::size_t b) {
    return 1.0 - pts[a].dot(pts[b]) / (pts[a].norm() * pts[b].norm());
  };
  std::vector<std::vector<std::size_t>> clusters;
  for (std::size_t i = 0; i < n; ++i) clusters.push_back({i});
  std::vector<NaiveMerge> out;
  while (clusters.size() > 1) {
    std::sort(clusters.begin(), clusters.end());
    double best = std::numeric_limits<double>::infinity();
    std::size_t ba = 0;
    std::size_t bb = 0;
    for (std::size_t a = 0; a < clusters.size(); ++a)
      for (std::size_t b = a + 1; b < clusters.size(); ++b) {
        double s = 0.0;
        for (auto x : clusters[a])
          for (auto y : clusters[b]) s += dist(x, y);
        s /= static_cast<double>(clusters[a].size() * clusters[b].size());
        if (s < best) {
          best = s;
          ba = a;
          bb = b;
        }
      }
    out.push_back({clusters[ba], clusters[bb], best});
    auto merged = clusters[ba];
    merged.insert(merged.end(), clusters[bb].begin(), clusters[bb].end());
    std::sort(merged.begin(), merged.end());
    clusters.erase(clusters.begin() + static_cast<long>(bb));
    clusters[ba] = merged;
  }
  return out;
}

// Stationary distribution of the damped walk by a dense linear solve:
// (I - d W^T) p = (1 - d)/n.
inline Vector lexrank_linear_solve(const std::vector<Vector>& pts, double damping) {
  const auto n = static_cast<Eigen::Index>(pts.size());
  Matrix w(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double rs = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double c = i == j ? 0.0
                              : pts[static_cast<std::size_t>(i)].dot(pts[static_cast<std::size_t>(j)]) /
                                    (pts[static_cast<std::size_t>(i)].norm() *
                                     pts[static_cast<std::size_t>(j)].norm());
      w(i, j) = std::max(c, 0.0);
      rs += w(i, j);
    }
    for (Eigen::Index j = 0; j < n; ++j) w(i, j) = rs > 0.0 ? w(i, j) / rs : 1.0 / static_cast<double>(n);
  }
  Matrix a = Matrix::Identity(n, n) - damping * w.transpose();
  Vector b = Vector::Constant(n, (1.0 - damping) / static_cast<double>(n));
  return a.fullPivLu().solve(b);
}

// Top-k eigenvectors of X^T X (uncentered), sign-fixed so the largest
// magnitude coordinate is positive.
inline std::vector<std::pair<Vector, double>> eigen_principal_components(const Matrix& x, int k) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(x.transpose() * x);
  std::vector<std::pair<Vector, double>> out;
  for (int c = 0; c < k; ++c) {
    const Eigen::Index col = es.eigenvalues().size() - 1 - c;
    Vector v = es.eigenvectors().col(col);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v[arg] < 0) v = -v;
    out.emplace_back(v, es.eigenvalues()[col]);
  }
  return out;
}

// Least squares by Gaussian elimination (partial pivoting) on X^T X b = X^T y.
inline std::vector<double> normal_equations(const Matrix& x, const Vector& y) {
  const auto p = static_cast<std::size_t>(x.cols());
  std::vector<std::vector<double>> a(p, std::vector<double>(p + 1, 0.0));
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      double s = 0.0;
      for (Eigen::Index r = 0; r < x.rows(); ++r)
        s += x(r, static_cast<Eigen::Index>(i)) * x(r, static_cast<Eigen::Index>(j));
      a[i][j] = s;
    }
    double s = 0.0;
    for (Eigen::Index r = 0; r < x.rows(); ++r) s += x(r, static_cast<Eigen::Index>(i)) * y[r];
    a[i][p] = s;
  }
  for (std::size_t c = 0; c < p; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < p; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    std::swap(a[c], a[piv]);
    for (std::size_t r = c + 1; r < p; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k <= p; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<double> b(p);
  for (std::size_t c = p; c-- > 0;) {
    double s = a[c][p];
    for (std::size_t k = c + 1; k < p; ++k) s -= a[c][k] * b[k];
    b[c] = s / a[c][c];
  }
  return b;
}

// Two-sided Student t p-value by Simpson integration of the density over
// [0, |t|].
inline double simpson_t_two_sided_p(double t, double df, int intervals = 200000) {
  const double c = std::exp(std::lgamma((df + 1) / 2) - std::lgamma(df / 2)) / std::sqrt(df * M_PI);
  auto f = [&](double x) { return c * std::pow(1.0 + x * x / df, -(df + 1) / 2); };
  const double b = std::abs(t);
  const double h = b / intervals;
  double s = f(0.0) + f(b);
  for (int i = 1; i < intervals; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
  const double half_mass = s * h / 3.0;
  return std::clamp(1.0 - 2.0 * half_mass, 0.0, 1.0);
}

}  // namespace vecsum::testing
