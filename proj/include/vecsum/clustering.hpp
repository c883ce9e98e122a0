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

// Average-linkage agglomerative clustering under cosine distance.

#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <vector>

#include "vecsum/linalg.hpp"

namespace vecsum {

struct Merge {
  // Members of the two clusters joined at this step, each sorted ascending;
  // `left` is the cluster whose smallest member is smaller.
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
  double distance = 0.0;
};

struct Dendrogram {
  std::size_t leaves = 0;
  std::vector<Merge> merges;  // leaves - 1 entries, in merge order
};

// Pairwise cosine distance 1 - cos(a, b) between rows.
inline Matrix cosine_distances(const Matrix& rows) {
  Matrix unit = rows;
  for (Eigen::Index i = 0; i < unit.rows(); ++i) {
    const double n = unit.row(i).norm();
    if (!(n > 0.0)) throw Error(ErrorKind::kZeroVector, "cannot cluster a zero vector");
    unit.row(i) /= n;
  }
  Matrix d = Matrix::Ones(rows.rows(), rows.rows()) - unit * unit.transpose();
  d.diagonal().setZero();
  return d;
}

// The closest pair (by mean pairwise distance) merges first. Ties go to the
// pair whose (smallest member of left, smallest member of right) is
// lexicographically smallest. Cross-cluster distance sums are updated in
// place, O(n^3) overall.
inline Dendrogram average_linkage(const Matrix& rows) {
  const auto n = static_cast<std::size_t>(rows.rows());
  Dendrogram tree;
  tree.leaves = n;
  if (n == 0) return tree;
  Matrix sums = cosine_distances(rows);
  std::vector<std::vector<std::size_t>> members(n);
  std::vector<bool> active(n, true);
  for (std::size_t i = 0; i < n; ++i) members[i] = {i};

  for (std::size_t step = 0; step + 1 < n; ++step) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t ba = 0;
    std::size_t bb = 0;
    // Slot i always holds the cluster whose smallest member is i, so a
    // row-major scan over i < j visits pairs in tie-break order.
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!active[j]) continue;
        const double avg = sums(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) /
                           static_cast<double>(members[i].size() * members[j].size());
        if (avg < best) {
          best = avg;
          ba = i;
          bb = j;
        }
      }
    }
    tree.merges.push_back({members[ba], members[bb], best});
    members[ba].insert(members[ba].end(), members[bb].begin(), members[bb].end());
    std::sort(members[ba].begin(), members[ba].end());
    members[bb].clear();
    active[bb] = false;
    const auto a = static_cast<Eigen::Index>(ba);
    const auto b = static_cast<Eigen::Index>(bb);
    for (std::size_t c = 0; c < n; ++c) {
      if (!active[c] || c == ba) continue;
      const auto ci = static_cast<Eigen::Index>(c);
      sums(a, ci) += sums(b, ci);
      sums(ci, a) = sums(a, ci);
    }
  }
  return tree;
}

// Clusters remaining after leaves - k merges, each sorted, ordered by
// smallest member.
inline std::vector<std::vector<std::size_t>> cut_tree(const Dendrogram& tree, std::size_t k) {
  const std::size_t n = tree.leaves;
  k = std::clamp<std::size_t>(k, n == 0 ? 0 : 1, n);
  std::vector<std::size_t> root(n);
  for (std::size_t i = 0; i < n; ++i) root[i] = i;
  auto find = [&](std::size_t x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  for (std::size_t m = 0; m < n - k; ++m) {
    const auto& merge = tree.merges[m];
    const std::size_t a = find(merge.left.front());
    const std::size_t b = find(merge.right.front());
    root[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::vector<std::size_t>> clusters;
  std::vector<long> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(clusters.size());
      clusters.emplace_back();
    }
    clusters[static_cast<std::size_t>(slot[r])].push_back(i);
  }
  return clusters;
}

}  // namespace vecsum
