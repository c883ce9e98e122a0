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

// Extractive sentence selectors over unit sentence vectors and a document
// vector, under a word budget.
//
// Streaming selectors (random, near, near-nonredundant, greedy, pca,
// lexrank) add sentences until the budget is reached, so they overshoot by
// at most part of the last sentence; ROUGE truncation enforces the hard
// limit. Subset selectors (brute-force, near-then-redundancy) search the
// budget-filling subsets of a candidate pool: total >= budget and dropping
// the longest member falls below it. Both families fall back to "everything"
// (short_summary) when the material runs out before the budget.
//
// Ties: document order for streaming selectors, lexicographic id order for
// subset enumeration.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vecsum/clustering.hpp"
#include "vecsum/corpus.hpp"
#include "vecsum/embeddings.hpp"
#include "vecsum/error.hpp"
#include "vecsum/linalg.hpp"

namespace vecsum {

// Non-owning view of one cluster's material; `vectors` is aligned with
// `sentences`.
struct SelectorInput {
  std::span<const Sentence> sentences;
  std::span<const SentenceVector> vectors;
  DocumentVector doc_vector;
  int budget = 100;
  std::uint64_t rng_seed = 0;

  void validate() const {
    if (budget <= 0) throw Error(ErrorKind::kConfig, "budget must be positive");
    if (sentences.size() != vectors.size())
      throw Error(ErrorKind::kIncompleteVectors, "sentence vectors do not cover the sentences");
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      if (!(sentences[i].id == vectors[i].sentence_id))
        throw Error(ErrorKind::kIncompleteVectors,
                    "vector " + std::to_string(i) + " belongs to " + vectors[i].sentence_id.str() +
                        ", expected " + sentences[i].id.str());
      require_same_dim(vectors[i].v, doc_vector.v, "sentence vs document vector");
    }
  }
};

struct SummaryCandidate {
  std::vector<SentenceId> selected;
  std::vector<std::size_t> indices;  // positions in SelectorInput::sentences
  int total_words = 0;
  std::optional<double> objective;
  bool short_summary = false;
  bool component_exhaustion = false;
};

enum class SelectorKind {
  kRandom,
  kNear,
  kNearNonredundant,
  kGreedy,
  kBruteForce,
  kMaxSimilarity,
  kNearThenRedundancy,
  kCluster,
  kPca,
  kLexRank,
};

inline constexpr std::array<SelectorKind, 10> kAllSelectors = {
    SelectorKind::kRandom,      SelectorKind::kNear,          SelectorKind::kNearNonredundant,
    SelectorKind::kGreedy,      SelectorKind::kBruteForce,    SelectorKind::kMaxSimilarity,
    SelectorKind::kNearThenRedundancy, SelectorKind::kCluster, SelectorKind::kPca,
    SelectorKind::kLexRank};

inline std::string_view selector_name(SelectorKind kind) {
  switch (kind) {
    case SelectorKind::kRandom: return "random";
    case SelectorKind::kNear: return "near";
    case SelectorKind::kNearNonredundant: return "near-nonredundant";
    case SelectorKind::kGreedy: return "greedy";
    case SelectorKind::kBruteForce: return "brute-force";
    case SelectorKind::kMaxSimilarity: return "max-similarity";
    case SelectorKind::kNearThenRedundancy: return "near-then-redundancy";
    case SelectorKind::kCluster: return "cluster";
    case SelectorKind::kPca: return "pca";
    case SelectorKind::kLexRank: return "lexrank";
  }
  return "?";
}

inline std::optional<SelectorKind> parse_selector(std::string_view name) {
  for (auto k : kAllSelectors)
    if (selector_name(k) == name) return k;
  return std::nullopt;
}

namespace detail {

// Precomputed per-input quantities shared by the selectors.
struct SelectionContext {
  explicit SelectionContext(const SelectorInput& in) : input(&in) {
    in.validate();
    const auto n = in.sentences.size();
    d = in.doc_vector.v;
    dim = d.size();
    unit = Matrix(static_cast<Eigen::Index>(n), dim);
    doc_cos = Vector(static_cast<Eigen::Index>(n));
    words.resize(n);
    const Vector dn = normalized(d, "document vector");
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = static_cast<Eigen::Index>(i);
      unit.row(r) = normalized(in.vectors[i].v, "sentence vector").transpose();
      doc_cos[r] = unit.row(r).dot(dn);
      words[i] = static_cast<int>(in.sentences[i].word_count());
    }
  }

  std::size_t size() const { return words.size(); }
  Vector row(std::size_t i) const { return unit.row(static_cast<Eigen::Index>(i)).transpose(); }
  double cos_doc(std::size_t i) const { return doc_cos[static_cast<Eigen::Index>(i)]; }
  double dot(std::size_t i, std::size_t j) const {
    return unit.row(static_cast<Eigen::Index>(i)).dot(unit.row(static_cast<Eigen::Index>(j)));
  }

  // Indices by descending cosine to the document, document order on ties.
  std::vector<std::size_t> by_doc_cosine() const {
    std::vector<std::size_t> order(size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return cos_doc(a) > cos_doc(b); });
    return order;
  }

  const SelectorInput* input;
  Vector d;
  Eigen::Index dim = 0;
  Matrix unit;
  Vector doc_cos;
  std::vector<int> words;
};

inline int budget_of(const SelectionContext& ctx) { return ctx.input->budget; }

}  // namespace detail

// Cosine between normalize(sum of the selected unit vectors) and the
// document vector. Vectors are summed in index order so that equal sets give
// bit-identical values regardless of selection order.
inline double objective_cosine(std::span<const std::size_t> indices,
                               std::span<const SentenceVector> vectors, const Vector& doc) {
  if (indices.empty())
    throw Error(ErrorKind::kNoFeasibleSummary, "objective of an empty summary");
  std::vector<std::size_t> sorted(indices.begin(), indices.end());
  std::sort(sorted.begin(), sorted.end());
  Vector sum = Vector::Zero(doc.size());
  for (auto i : sorted) {
    require_same_dim(sum, vectors[i].v, "objective");
    sum += vectors[i].v.normalized();
  }
  if (!(sum.norm() > 1e-12))
    throw Error(ErrorKind::kZeroVector, "summary vector is zero");
  return cosine(sum, doc);
}

inline double objective_cosine(const SummaryCandidate& candidate, const SelectorInput& input) {
  return objective_cosine(candidate.indices, input.vectors, input.doc_vector.v);
}

namespace detail {

inline SummaryCandidate make_candidate(const SelectorInput& input,
                                       std::vector<std::size_t> indices) {
  SummaryCandidate c;
  c.indices = std::move(indices);
  for (auto i : c.indices) {
    c.selected.push_back(input.sentences[i].id);
    c.total_words += static_cast<int>(input.sentences[i].word_count());
  }
  if (!c.indices.empty()) {
    try {
      c.objective = objective_cosine(c, input);
    } catch (const Error&) {
      c.objective.reset();
    }
  }
  return c;
}

// Takes sentences in `order` until the budget is met.
inline SummaryCandidate take_until_budget(const SelectionContext& ctx,
                                          std::span<const std::size_t> order) {
  std::vector<std::size_t> picked;
  int total = 0;
  for (auto i : order) {
    if (total >= budget_of(ctx)) break;
    picked.push_back(i);
    total += ctx.words[i];
  }
  auto c = make_candidate(*ctx.input, std::move(picked));
  c.short_summary = c.total_words < budget_of(ctx);
  return c;
}

inline std::vector<std::size_t> sorted_indices(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Uniform integer in [0, bound) from raw 64-bit draws (rejection sampling),
// so results do not depend on the standard library's distributions.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = 0;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace detail

inline SummaryCandidate select_random(const SelectorInput& input) {
  detail::SelectionContext ctx(input);
  std::vector<std::size_t> order(ctx.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(input.rng_seed);
  for (std::size_t i = order.size(); i > 1; --i)
    std::swap(order[i - 1], order[detail::uniform_below(rng, i)]);
  return detail::take_until_budget(ctx, order);
}

inline SummaryCandidate select_near(const SelectorInput& input) {
  detail::SelectionContext ctx(input);
  const auto order = ctx.by_doc_cosine();
  return detail::take_until_budget(ctx, order);
}

// Quadratic model of redundancy as a function of cosine-to-document.
struct RedundancyRegression {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;

  double predict(double x) const { return c0 + c1 * x + c2 * x * x; }
  double residual(double x, double y) const { return y - predict(x); }
};

inline RedundancyRegression fit_redundancy_regression(
    std::span<const std::pair<double, double>> pairs) {
  std::vector<double> xs;
  for (const auto& [x, y] : pairs) xs.push_back(x);
  std::sort(xs.begin(), xs.end());
  const auto distinct = std::unique(xs.begin(), xs.end()) - xs.begin();
  if (distinct < 3)
    throw Error(ErrorKind::kDegenerateFit,
                "redundancy regression needs 3 distinct abscissae, got " + std::to_string(distinct));
  Matrix design(static_cast<Eigen::Index>(pairs.size()), 3);
  Vector y(static_cast<Eigen::Index>(pairs.size()));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    const double x = pairs[i].first;
    design(r, 0) = 1.0;
    design(r, 1) = x;
    design(r, 2) = x * x;
    y[r] = pairs[i].second;
  }
  Eigen::ColPivHouseholderQR<Matrix> qr(design);
  if (qr.rank() < 3) throw Error(ErrorKind::kDegenerateFit, "rank-deficient redundancy design");
  const Vector c = qr.solve(y);
  return {c[0], c[1], c[2]};
}

// Training pairs for the redundancy regression: runs Near and records, for
// each pick after the first, (cosine to document, mean cosine to the
// sentences picked before it).
inline std::vector<std::pair<double, double>> redundancy_training_pairs(
    const SelectorInput& input) {
  detail::SelectionContext ctx(input);
  const auto chosen = select_near(input).indices;
  std::vector<std::pair<double, double>> out;
  for (std::size_t step = 1; step < chosen.size(); ++step) {
    double red = 0.0;
    for (std::size_t j = 0; j < step; ++j) red += ctx.dot(chosen[step], chosen[j]);
    out.emplace_back(ctx.cos_doc(chosen[step]), red / static_cast<double>(step));
  }
  return out;
}

// residual(cosine_to_doc, redundancy); the score of a candidate is
// cosine_to_doc - residual. The first pick uses the plain cosine.
using RedundancyResidual = std::function<double(double, double)>;

inline SummaryCandidate select_near_nonredundant(const SelectorInput& input,
                                                 const RedundancyResidual& residual) {
  detail::SelectionContext ctx(input);
  const std::size_t n = ctx.size();
  std::vector<bool> taken(n, false);
  std::vector<std::size_t> picked;
  int total = 0;
  while (total < input.budget && picked.size() < n) {
    std::size_t best = n;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (taken[i]) continue;
      double score = ctx.cos_doc(i);
      if (!picked.empty()) {
        double red = 0.0;
        for (auto j : picked) red += ctx.dot(i, j);
        red /= static_cast<double>(picked.size());
        score -= residual(ctx.cos_doc(i), red);
      }
      if (best == n || score > best_score) {
        best = i;
        best_score = score;
      }
    }
    taken[best] = true;
    picked.push_back(best);
    total += ctx.words[best];
  }
  auto c = detail::make_candidate(input, std::move(picked));
  c.short_summary = c.total_words < input.budget;
  return c;
}

inline SummaryCandidate select_near_nonredundant(const SelectorInput& input,
                                                 const RedundancyRegression& regression) {
  return select_near_nonredundant(
      input, [&](double x, double y) { return regression.residual(x, y); });
}

// Greedy cosine maximization.
//
// With partial_sum = sum of the selected unit vectors, m = |partial_sum| and
// s_p = partial_sum / m, adding s gives summary cosine
//   (m (d.s_p) + d.s) / sqrt(m^2 + 1 + 2m (s_p.s)).
// When the selected vectors are collinear m equals the pick count i, which
// is eq3_score below.
struct GreedyState {
  Vector partial_sum;
  Vector s_p;
  int i = 0;
  std::vector<bool> remaining;
};

inline double eq3_score(double i, double d_dot_sp, double d_dot_s, double sp_dot_s) {
  return (i * d_dot_sp + d_dot_s) / std::sqrt(i * i + 1.0 + 2.0 * i * sp_dot_s);
}

inline double greedy_step_score(const Vector& partial_sum, const Vector& doc, const Vector& s) {
  const double m = partial_sum.norm();
  if (m == 0.0) return doc.dot(s) / doc.norm();
  const Vector sp = partial_sum / m;
  const double denom_sq = m * m + 1.0 + 2.0 * m * sp.dot(s);
  if (!(denom_sq > 1e-24)) return -std::numeric_limits<double>::infinity();
  return (m * doc.dot(sp) + doc.dot(s)) / (std::sqrt(denom_sq) * doc.norm());
}

struct GreedyStep {
  int step = 0;  // 1-based
  std::size_t index = 0;
  SentenceId id;
  double standalone_cosine = 0.0;
  std::optional<double> objective_before;
  double objective_after = 0.0;
  std::optional<double> sp_dot_s;
};

inline SummaryCandidate select_greedy(const SelectorInput& input,
                                      std::vector<GreedyStep>* trace = nullptr) {
  detail::SelectionContext ctx(input);
  const std::size_t n = ctx.size();
  const Vector doc = normalized(ctx.d, "document vector");
  GreedyState state{Vector::Zero(ctx.dim), Vector::Zero(ctx.dim), 0, std::vector<bool>(n, true)};
  std::vector<std::size_t> picked;
  int total = 0;
  std::optional<double> current;
  while (total < input.budget && picked.size() < n) {
    std::size_t best = n;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
      if (!state.remaining[k]) continue;
      const double score = state.i == 0 ? ctx.cos_doc(k)
                                        : greedy_step_score(state.partial_sum, doc, ctx.row(k));
      if (best == n || score > best_score) {
        best = k;
        best_score = score;
      }
    }
    const Vector s = ctx.row(best);
    if (trace != nullptr) {
      GreedyStep rec;
      rec.step = state.i + 1;
      rec.index = best;
      rec.id = input.sentences[best].id;
      rec.standalone_cosine = ctx.cos_doc(best);
      rec.objective_before = current;
      rec.objective_after = best_score;
      if (state.i > 0) rec.sp_dot_s = state.s_p.dot(s);
      trace->push_back(std::move(rec));
    }
    current = best_score;
    state.remaining[best] = false;
    state.partial_sum += s;
    ++state.i;
    const double norm = state.partial_sum.norm();
    state.s_p = norm > 0.0 ? Vector(state.partial_sum / norm) : Vector::Zero(ctx.dim);
    picked.push_back(best);
    total += ctx.words[best];
  }
  auto c = detail::make_candidate(input, std::move(picked));
  c.short_summary = c.total_words < input.budget;
  return c;
}

namespace detail {

// Top `pool_size` sentences by cosine to the document, returned in
// document order.
inline std::vector<std::size_t> top_pool(const SelectionContext& ctx, std::size_t pool_size) {
  auto order = ctx.by_doc_cosine();
  if (order.size() > pool_size) order.resize(pool_size);
  return sorted_indices(std::move(order));
}

// Depth-first walk over budget-filling subsets of `pool` (document order).
// `visit(members)` receives each admissible subset in include-first order.
// A subset is admissible when total >= budget and total - longest < budget,
// or when it is the whole pool and the pool is short of the budget.
template <class Visit>
void enumerate_budget_subsets(const SelectionContext& ctx, std::span<const std::size_t> pool,
                              Visit&& visit) {
  const int budget = budget_of(ctx);
  int pool_total = 0;
  for (auto i : pool) pool_total += ctx.words[i];
  if (pool_total < budget) {
    std::vector<std::size_t> all(pool.begin(), pool.end());
    if (!all.empty()) visit(std::span<const std::size_t>(all));
    return;
  }
  std::vector<std::size_t> chosen;
  auto rec = [&](auto&& self, std::size_t pos, int total, int longest) -> void {
    if (total >= budget) visit(std::span<const std::size_t>(chosen));
    for (std::size_t p = pos; p < pool.size(); ++p) {
      const int w = ctx.words[pool[p]];
      const int nt = total + w;
      const int nl = std::max(longest, w);
      if (nt - nl >= budget) continue;
      chosen.push_back(pool[p]);
      self(self, p + 1, nt, nl);
      chosen.pop_back();
    }
  };
  rec(rec, 0, 0, 0);
}

}  // namespace detail

// Maximizes objective_cosine over budget-filling subsets of the top pool.
inline SummaryCandidate select_brute_force(const SelectorInput& input, std::size_t pool_size = 20) {
  if (pool_size < 1) throw Error(ErrorKind::kConfig, "brute-force pool size must be >= 1");
  detail::SelectionContext ctx(input);
  const auto pool = detail::top_pool(ctx, pool_size);
  const Vector doc = normalized(ctx.d, "document vector");

  std::vector<std::size_t> best;
  double best_score = -std::numeric_limits<double>::infinity();
  detail::enumerate_budget_subsets(ctx, pool, [&](std::span<const std::size_t> members) {
    double dot_doc = 0.0;
    double sq = 0.0;
    for (std::size_t a = 0; a < members.size(); ++a) {
      dot_doc += ctx.cos_doc(members[a]);
      sq += 1.0;
      for (std::size_t b = 0; b < a; ++b) sq += 2.0 * ctx.dot(members[a], members[b]);
    }
    if (!(sq > 1e-24)) return;
    const double score = dot_doc / std::sqrt(sq);
    // Enumeration is in lexicographic order, so the strict comparison keeps
    // the lexicographically smallest subset among ties.
    if (best.empty() || score > best_score) {
      best.assign(members.begin(), members.end());
      best_score = score;
    }
  });
  if (best.empty())
    throw Error(ErrorKind::kNoFeasibleSummary,
                "no budget-filling subset with a nonzero summary vector");
  auto c = detail::make_candidate(input, std::move(best));
  c.short_summary = c.total_words < input.budget;
  return c;
}

inline SummaryCandidate select_max_similarity(const SelectorInput& input,
                                              std::size_t pool_size = 20) {
  auto greedy = select_greedy(input);
  std::optional<SummaryCandidate> brute;
  try {
    brute = select_brute_force(input, pool_size);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kNoFeasibleSummary) throw;
  }
  if (!greedy.objective && (!brute || !brute->objective))
    throw Error(ErrorKind::kNoFeasibleSummary, "neither greedy nor brute force has an objective");
  if (brute && brute->objective && (!greedy.objective || *brute->objective > *greedy.objective))
    return *brute;
  return greedy;
}

// Minimizes mean pairwise cosine over budget-filling subsets of the top pool.
inline SummaryCandidate select_near_then_redundancy(const SelectorInput& input,
                                                    std::size_t pool_size = 15) {
  if (pool_size < 2) throw Error(ErrorKind::kConfig, "near-then-redundancy pool size must be >= 2");
  detail::SelectionContext ctx(input);
  const auto pool = detail::top_pool(ctx, pool_size);
  std::vector<std::size_t> best;
  double best_red = std::numeric_limits<double>::infinity();
  detail::enumerate_budget_subsets(ctx, pool, [&](std::span<const std::size_t> members) {
    double red = 0.0;
    if (members.size() >= 2) {
      double sum = 0.0;
      for (std::size_t a = 0; a < members.size(); ++a)
        for (std::size_t b = 0; b < a; ++b) sum += ctx.dot(members[a], members[b]);
      const double pairs = static_cast<double>(members.size() * (members.size() - 1)) / 2.0;
      red = sum / pairs;
    }
    if (best.empty() || red < best_red) {
      best.assign(members.begin(), members.end());
      best_red = red;
    }
  });
  if (best.empty()) throw Error(ErrorKind::kNoFeasibleSummary, "empty candidate pool");
  auto c = detail::make_candidate(input, std::move(best));
  c.short_summary = c.total_words < input.budget;
  return c;
}

// Cuts an average-linkage dendrogram at k = 1, 2, ... clusters and returns
// the first set of cluster representatives (closest to the normalized
// cluster mean) that reaches the budget, in document order.
inline SummaryCandidate select_cluster(const SelectorInput& input) {
  detail::SelectionContext ctx(input);
  const std::size_t n = ctx.size();
  if (n == 0) throw Error(ErrorKind::kNoFeasibleSummary, "no sentences");
  const Dendrogram tree = average_linkage(ctx.unit);
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::size_t> reps;
    int total = 0;
    for (const auto& members : cut_tree(tree, k)) {
      Vector mean = Vector::Zero(ctx.dim);
      for (auto m : members) mean += ctx.row(m);
      std::size_t rep = members.front();
      if (mean.norm() > 1e-12) {
        // In a two-member cluster both members tie exactly, so ties within
        // rounding go to the earlier sentence.
        double best = -std::numeric_limits<double>::infinity();
        for (auto m : members) {
          const double c = ctx.row(m).dot(mean);
          if (c > best + 1e-12) {
            best = c;
            rep = m;
          }
        }
      }
      reps.push_back(rep);
      total += ctx.words[rep];
    }
    if (total >= input.budget || k == n) {
      auto c = detail::make_candidate(input, detail::sorted_indices(std::move(reps)));
      c.short_summary = c.total_words < input.budget;
      return c;
    }
  }
  throw Error(ErrorKind::kNoFeasibleSummary, "unreachable");
}

// One sentence per uncentered principal component (largest |cosine|), in
// component order. When the components run out, keeps drawing by |cosine|
// to the last one and sets component_exhaustion.
inline SummaryCandidate select_pca(const SelectorInput& input, PowerIterationOptions opts = {}) {
  detail::SelectionContext ctx(input);
  const std::size_t n = ctx.size();
  if (n == 0) throw Error(ErrorKind::kNoFeasibleSummary, "no sentences");
  const auto comps =
      principal_components(ctx.unit, std::min<std::size_t>(n, static_cast<std::size_t>(ctx.dim)), opts);
  std::vector<bool> taken(n, false);
  std::vector<std::size_t> picked;
  int total = 0;
  bool exhausted = false;
  for (std::size_t step = 0; total < input.budget && picked.size() < n; ++step) {
    if (step >= comps.size()) exhausted = true;
    const Vector& axis = comps[std::min(step, comps.size() - 1)].direction;
    std::size_t best = n;
    double best_abs = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (taken[i]) continue;
      const double a = std::abs(ctx.unit.row(static_cast<Eigen::Index>(i)).dot(axis));
      if (a > best_abs) {
        best_abs = a;
        best = i;
      }
    }
    taken[best] = true;
    picked.push_back(best);
    total += ctx.words[best];
  }
  auto c = detail::make_candidate(input, std::move(picked));
  c.short_summary = c.total_words < input.budget;
  c.component_exhaustion = exhausted;
  return c;
}

struct LexRankOptions {
  double damping = 0.85;
  double tol = 1e-10;
  int max_iter = 100000;
};

// Row-stochastic transition matrix from max(cosine, 0) edge weights with no
// self loops; all-zero rows become uniform.
inline Matrix lexrank_transition(const Matrix& unit_rows) {
  const Eigen::Index n = unit_rows.rows();
  Matrix w = (unit_rows * unit_rows.transpose()).cwiseMax(0.0);
  w.diagonal().setZero();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double s = w.row(i).sum();
    if (s > 0.0) w.row(i) /= s;
    else w.row(i).setConstant(1.0 / static_cast<double>(n));
  }
  return w;
}

// Power iteration p <- damping W^T p + (1 - damping)/n until the L1 change
// drops below tol.
inline Vector lexrank_scores(const Matrix& unit_rows, LexRankOptions opts = {}) {
  const Eigen::Index n = unit_rows.rows();
  if (n == 0) return {};
  const Matrix wt = lexrank_transition(unit_rows).transpose();
  const double teleport = (1.0 - opts.damping) / static_cast<double>(n);
  Vector p = Vector::Constant(n, 1.0 / static_cast<double>(n));
  for (int iter = 0; iter < opts.max_iter; ++iter) {
    Vector next = (opts.damping * (wt * p)).array() + teleport;
    const double change = (next - p).lpNorm<1>();
    p = std::move(next);
    if (change < opts.tol) break;
  }
  return p;
}

inline SummaryCandidate select_lexrank(const SelectorInput& input, LexRankOptions opts = {}) {
  detail::SelectionContext ctx(input);
  const Vector scores = lexrank_scores(ctx.unit, opts);
  std::vector<std::size_t> order(ctx.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[static_cast<Eigen::Index>(a)] > scores[static_cast<Eigen::Index>(b)];
  });
  return detail::take_until_budget(ctx, order);
}

struct SelectorParams {
  std::size_t brute_force_pool = 20;
  std::size_t redundancy_pool = 15;
  LexRankOptions lexrank;
  std::optional<RedundancyRegression> regression;
};

inline SummaryCandidate run_selector(SelectorKind kind, const SelectorInput& input,
                                     const SelectorParams& params = {},
                                     std::vector<GreedyStep>* trace = nullptr) {
  switch (kind) {
    case SelectorKind::kRandom: return select_random(input);
    case SelectorKind::kNear: return select_near(input);
    case SelectorKind::kNearNonredundant:
      if (!params.regression)
        throw Error(ErrorKind::kDegenerateFit, "near-nonredundant needs a fitted regression");
      return select_near_nonredundant(input, *params.regression);
    case SelectorKind::kGreedy: return select_greedy(input, trace);
    case SelectorKind::kBruteForce: return select_brute_force(input, params.brute_force_pool);
    case SelectorKind::kMaxSimilarity: return select_max_similarity(input, params.brute_force_pool);
    case SelectorKind::kNearThenRedundancy:
      return select_near_then_redundancy(input, params.redundancy_pool);
    case SelectorKind::kCluster: return select_cluster(input);
    case SelectorKind::kPca: return select_pca(input);
    case SelectorKind::kLexRank: return select_lexrank(input, params.lexrank);
  }
  throw Error(ErrorKind::kConfig, "unknown selector");
}

}  // namespace vecsum
