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
#include "vecsum/clustering.hpp"

namespace vecsum {
namespace {

TEST(AverageLinkage, MatchesNaiveOracle) {
  std::mt19937_64 rng(31);
  for (int set = 0; set < 60; ++set) {
    const int n = 2 + set % 10;
    std::vector<Vector> pts;
    Matrix rows(n, 4);
    for (int i = 0; i < n; ++i) {
      pts.push_back(testing::random_unit(rng, 4) * (1.0 + i));  // scale must not matter
      rows.row(i) = pts.back().transpose();
    }
    const auto tree = average_linkage(rows);
    const auto naive = testing::naive_average_linkage(pts);
    ASSERT_EQ(tree.merges.size(), naive.size());
    for (std::size_t m = 0; m < naive.size(); ++m) {
      EXPECT_EQ(tree.merges[m].left, naive[m].left);
      EXPECT_EQ(tree.merges[m].right, naive[m].right);
      EXPECT_NEAR(tree.merges[m].distance, naive[m].distance, 1e-12);
    }
  }
}

TEST(AverageLinkage, HandWorkedExample) {
  // Unit vectors at angles 0, 10 and 90 degrees: the first two merge, then
  // the third joins at mean distance (1 - cos 90 + 1 - cos 80) / 2.
  Matrix rows(3, 2);
  const double r = M_PI / 180.0;
  rows << 1, 0, std::cos(10 * r), std::sin(10 * r), 0, 1;
  const auto tree = average_linkage(rows);
  ASSERT_EQ(tree.merges.size(), 2u);
  EXPECT_EQ(tree.merges[0].left, std::vector<std::size_t>{0});
  EXPECT_EQ(tree.merges[0].right, std::vector<std::size_t>{1});
  EXPECT_NEAR(tree.merges[0].distance, 1 - std::cos(10 * r), 1e-15);
  EXPECT_EQ(tree.merges[1].left, (std::vector<std::size_t>{0, 1}));
  EXPECT_NEAR(tree.merges[1].distance, (1.0 + 1.0 - std::cos(80 * r)) / 2.0, 1e-15);
}

TEST(AverageLinkage, TiesGoToSmallestMembers) {
  // Four identical points: every distance is zero, so merges follow index
  // order.
  Matrix rows = Matrix::Ones(4, 2);
  const auto tree = average_linkage(rows);
  EXPECT_EQ(tree.merges[0].left, std::vector<std::size_t>{0});
  EXPECT_EQ(tree.merges[0].right, std::vector<std::size_t>{1});
  EXPECT_EQ(tree.merges[1].left, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(tree.merges[1].right, std::vector<std::size_t>{2});
}

TEST(AverageLinkage, ZeroVectorRejected) {
  Matrix rows = Matrix::Zero(2, 2);
  rows(0, 0) = 1;
  EXPECT_THROW(average_linkage(rows), Error);
}

TEST(CutTree, PartitionsAtEveryLevel) {
  std::mt19937_64 rng(32);
  Matrix rows(9, 3);
  for (int i = 0; i < 9; ++i) rows.row(i) = testing::random_unit(rng, 3).transpose();
  const auto tree = average_linkage(rows);
  for (std::size_t k = 1; k <= 9; ++k) {
    const auto parts = cut_tree(tree, k);
    ASSERT_EQ(parts.size(), k);
    std::vector<std::size_t> all;
    for (const auto& p : parts) {
      EXPECT_TRUE(std::is_sorted(p.begin(), p.end()));
      all.insert(all.end(), p.begin(), p.end());
    }
    std::sort(all.begin(), all.end());
    for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(all[i], i);
    for (std::size_t j = 1; j < parts.size(); ++j) EXPECT_LT(parts[j - 1].front(), parts[j].front());
  }
  EXPECT_EQ(cut_tree(tree, 0).size(), 1u);
  EXPECT_EQ(cut_tree(tree, 50).size(), 9u);
}

}  // namespace
}  // namespace vecsum
