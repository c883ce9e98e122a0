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

// Hand-counted ROUGE fixtures: per reference, (matched, total) n-grams.

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace vecsum::testing {

struct RougeFixture {
  std::string name;
  std::string candidate;
  std::vector<std::string> references;
  std::vector<std::pair<int, int>> unigram;  // per reference
  std::vector<std::pair<int, int>> bigram;
};

inline std::string repeat_word(const std::string& w, int times) {
  std::string out;
  for (int i = 0; i < times; ++i) out += (i ? " " : "") + w;
  return out;
}

inline std::vector<RougeFixture> rouge_fixtures() {
  return {
      {"exact match", "the cat sat on the mat", {"the cat sat on the mat"}, {{6, 6}}, {{5, 5}}},
      {"prefix", "the cat sat", {"the cat sat on the mat"}, {{3, 6}}, {{2, 5}}},
      {"unigram clipping", "the the the the", {"the cat and the dog"}, {{2, 5}}, {{0, 4}}},
      {"stem matches", "running dogs jumped", {"the dog runs and jumps"}, {{3, 5}}, {{0, 4}}},
      {"case and punctuation", "The CAT, sat!", {"the cat sat."}, {{3, 3}}, {{2, 2}}},
      {"two references", "red green blue", {"red green black white", "blue pink"},
       {{2, 4}, {1, 2}}, {{1, 3}, {0, 1}}},
      {"candidate truncated", repeat_word("alpha", 100) + " omega", {"omega alpha"}, {{1, 2}}, {{0, 1}}},
      {"reference truncated", "gamma beta", {repeat_word("beta", 100) + " gamma"}, {{1, 100}}, {{0, 99}}},
      {"empty candidate", "", {"one two"}, {{0, 2}}, {{0, 1}}},
      {"bigram clipping", "new york new york new york", {"new york is new york"}, {{4, 5}}, {{2, 4}}},
      {"reference without bigrams", "sun moon", {"sun", "sun moon"}, {{1, 1}, {2, 2}}, {{0, 0}, {1, 1}}},
      {"stems collapse", "connect connected connecting", {"connection connections"}, {{2, 2}}, {{1, 1}}},
  };
}

// Mean per-reference recall as an exact fraction num/den; a reference with
// no n-grams contributes 0.
inline std::pair<long, long> mean_recall_fraction(const std::vector<std::pair<int, int>>& counts) {
  long num = 0;
  long den = 1;
  for (const auto& [m, t] : counts) {
    if (t == 0) continue;
    num = num * t + m * den;
    den *= t;
  }
  den *= static_cast<long>(counts.size());
  return {num, den};
}

}  // namespace vecsum::testing
