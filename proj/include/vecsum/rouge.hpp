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

// ROUGE-1 / ROUGE-2 recall with Porter stemming, 100-word truncation and
// averaging over references (the "-m -l 100 -f A" settings). Stopwords are
// kept. Not byte-compatible with the Perl script: tokenization is
// vecsum::tokenize and stemming is the plain Porter algorithm.

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vecsum/corpus.hpp"
#include "vecsum/error.hpp"
#include "vecsum/porter_stemmer.hpp"

namespace vecsum {

inline constexpr std::size_t kDefaultWordLimit = 100;

// Tokenize, keep the first word_limit tokens, lowercase, stem.
inline std::vector<std::string> preprocess(std::string_view text,
                                           std::size_t word_limit = kDefaultWordLimit) {
  auto tokens = tokenize(text);
  if (tokens.size() > word_limit) tokens.resize(word_limit);
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(porter_stem(t.lowercased));
  return out;
}

struct NgramMultiset {
  int n = 1;
  // N-gram tokens joined by '\x1f'.
  std::map<std::string, int> counts;

  int size() const {
    int total = 0;
    for (const auto& [k, c] : counts) total += c;
    return total;
  }
};

inline NgramMultiset ngram_multiset(std::span<const std::string> tokens, int n) {
  NgramMultiset out;
  out.n = n;
  if (n <= 0 || tokens.size() < static_cast<std::size_t>(n)) return out;
  for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (int k = 1; k < n; ++k) {
      key += '\x1f';
      key += tokens[i + static_cast<std::size_t>(k)];
    }
    ++out.counts[key];
  }
  return out;
}

// Clipped matches against one reference.
struct RougeCounts {
  int matched = 0;
  int total = 0;

  double recall() const { return total == 0 ? 0.0 : static_cast<double>(matched) / total; }
};

inline RougeCounts rouge_counts(const NgramMultiset& candidate, const NgramMultiset& reference) {
  RougeCounts out;
  for (const auto& [gram, count] : reference.counts) {
    out.total += count;
    if (auto it = candidate.counts.find(gram); it != candidate.counts.end())
      out.matched += std::min(count, it->second);
  }
  return out;
}

struct RougeScore {
  double rouge1 = 0.0;
  double rouge2 = 0.0;
  int refs_used = 0;
};

// References preprocessed once, scored against many candidates.
class ReferenceSet {
 public:
  explicit ReferenceSet(std::span<const std::string> references,
                        std::size_t word_limit = kDefaultWordLimit)
      : word_limit_(word_limit) {
    if (references.empty())
      throw Error(ErrorKind::kMissingReference, "ROUGE needs at least one reference");
    for (const auto& r : references) {
      const auto stems = preprocess(r, word_limit);
      unigrams_.push_back(ngram_multiset(stems, 1));
      bigrams_.push_back(ngram_multiset(stems, 2));
    }
  }

  std::size_t size() const { return unigrams_.size(); }
  std::size_t word_limit() const { return word_limit_; }

  std::vector<RougeCounts> counts(std::span<const std::string> candidate_stems, int n) const {
    const auto cand = ngram_multiset(candidate_stems, n);
    const auto& refs = n == 1 ? unigrams_ : bigrams_;
    std::vector<RougeCounts> out;
    for (const auto& r : refs) out.push_back(rouge_counts(cand, r));
    return out;
  }

  // Mean per-reference recall; a reference with no n-grams contributes 0.
  double score(std::span<const std::string> candidate_stems, int n) const {
    if (n != 1 && n != 2) throw Error(ErrorKind::kConfig, "only ROUGE-1 and ROUGE-2 are supported");
    double sum = 0.0;
    for (const auto& c : counts(candidate_stems, n)) sum += c.recall();
    return sum / static_cast<double>(size());
  }

  RougeScore score(std::string_view candidate) const {
    const auto stems = preprocess(candidate, word_limit_);
    return {score(stems, 1), score(stems, 2), static_cast<int>(size())};
  }

 private:
  std::size_t word_limit_;
  std::vector<NgramMultiset> unigrams_;
  std::vector<NgramMultiset> bigrams_;
};

inline double rouge_n(std::string_view candidate, std::span<const std::string> references, int n,
                      std::size_t word_limit = kDefaultWordLimit) {
  ReferenceSet refs(references, word_limit);
  return refs.score(preprocess(candidate, word_limit), n);
}

inline RougeScore score_summary(std::string_view candidate,
                                std::span<const std::string> references,
                                std::size_t word_limit = kDefaultWordLimit) {
  return ReferenceSet(references, word_limit).score(candidate);
}

// ROUGE-n of one sentence on its own. The candidate is never truncated below
// its own length; references keep the usual limit.
inline double isolated_sentence_rouge(std::string_view sentence, const ReferenceSet& refs,
                                      int n = 1) {
  const auto stems = preprocess(sentence, std::max(count_words(sentence), refs.word_limit()));
  return refs.score(stems, n);
}

inline double isolated_sentence_rouge(std::string_view sentence,
                                      std::span<const std::string> references, int n = 1) {
  return isolated_sentence_rouge(sentence, ReferenceSet(references), n);
}

// Summary text: the selected sentences joined by spaces, in selection order.
inline std::string summary_text(std::span<const Sentence> sentences,
                                std::span<const std::size_t> indices) {
  std::string out;
  for (auto i : indices) {
    if (!out.empty()) out += ' ';
    out += sentences[i].text;
  }
  return out;
}

}  // namespace vecsum
