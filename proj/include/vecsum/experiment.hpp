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

// Experiment orchestration: the (vector function x selector x document
// vector strategy) matrix over a corpus, its ROUGE tables and the analysis
// artifacts. Every emitted file is a deterministic function of the config
// and seed; worker threads only change wall-clock time.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>
#include "vecsum/analysis.hpp"
#include "vecsum/corpus.hpp"
#include "vecsum/embeddings.hpp"
#include "vecsum/error.hpp"
#include "vecsum/rouge.hpp"
#include "vecsum/selectors.hpp"
#include "vecsum/version.hpp"

namespace vecsum {

namespace fs = std::filesystem;

inline constexpr std::array<std::string_view, 4> kVectorFunctionNames = {
    "sif-average", "arora", "paragraph-vectors", "skip-thought"};

inline bool is_native_function(std::string_view name) {
  return name == "sif-average" || name == "arora";
}

enum class DocvecMode { kSimple, kDocvecAvg, kBoth };

struct ExperimentConfig {
  fs::path corpus_dir;
  std::optional<fs::path> word_vectors;
  std::optional<fs::path> frequencies;
  std::map<std::string, fs::path> external_vectors;
  std::vector<std::string> vector_functions = {"sif-average", "arora"};
  std::vector<SelectorKind> selectors = {kAllSelectors.begin(), kAllSelectors.end()};
  DocvecMode docvec_strategy = DocvecMode::kSimple;
  int budget = 100;
  std::uint64_t seed = 0;
  fs::path output_dir = "vecsum-out";
  std::size_t brute_force_pool = 20;
  std::size_t redundancy_pool = 15;
  double lexrank_damping = 0.85;
  double lexrank_tol = 1e-10;
  double sif_a = 1e-3;
  double alpha = 0.05;
  std::optional<fs::path> common_component;
  std::optional<fs::path> common_component_sample;
  // Split clusters by a hash of their id: the redundancy regression and the
  // dimension regression train on one half, the matrix runs on the other.
  bool split = false;
  int isolated_rouge_n = 1;
  unsigned threads = 0;  // 0 = hardware concurrency
  // Defaults-filled config as written in the file (paths unresolved); echoed
  // into run.json.
  nlohmann::json echo;

  std::vector<DocvecStrategy> strategies() const {
    switch (docvec_strategy) {
      case DocvecMode::kSimple: return {DocvecStrategy::kSimple};
      case DocvecMode::kDocvecAvg: return {DocvecStrategy::kDocvecAvg};
      case DocvecMode::kBoth: return {DocvecStrategy::kSimple, DocvecStrategy::kDocvecAvg};
    }
    return {};
  }
};

namespace detail {

inline std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1);
  std::vector<std::size_t> cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j)
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] != b[j - 1])});
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

template <class Names>
[[noreturn]] inline void unknown_name(std::string_view what, std::string_view given,
                                      const Names& valid) {
  std::string closest;
  std::size_t best = std::string::npos;
  std::string list;
  for (const auto& v : valid) {
    const std::string name(v);
    const auto d = edit_distance(given, name);
    if (d < best) {
      best = d;
      closest = name;
    }
    list += (list.empty() ? "" : ", ") + name;
  }
  std::string msg = "unknown " + std::string(what) + " '" + std::string(given) + "'";
  if (best <= 3) msg += " (did you mean '" + closest + "'?)";
  throw Error(ErrorKind::kConfig, msg + "; valid names: " + list);
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::string_view key) {
  std::uint64_t z = seed ^ fnv1a(key);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace detail

// Even hash -> validation half (training), odd -> test half.
inline bool is_validation_cluster(const std::string& cluster_id) {
  return detail::fnv1a(cluster_id) % 2 == 0;
}

inline ExperimentConfig parse_config(const nlohmann::json& raw, const fs::path& base_dir) {
  using nlohmann::json;
  static const std::set<std::string> kKeys = {
      "corpus_dir",      "word_vectors",     "frequencies",   "external_vectors",
      "vector_functions", "selectors",       "docvec_strategy", "budget",
      "seed",            "output_dir",       "brute_force_pool", "redundancy_pool",
      "lexrank_damping", "lexrank_tol",      "sif_a",         "alpha",
      "common_component", "common_component_sample", "split", "isolated_rouge_n",
      "threads"};
  if (!raw.is_object()) throw Error(ErrorKind::kConfig, "config must be a JSON object");
  for (const auto& [key, value] : raw.items())
    if (!kKeys.contains(key)) detail::unknown_name("config key", key, kKeys);

  ExperimentConfig cfg;
  auto path_of = [&](const std::string& s) { return fs::path(s).is_absolute() ? fs::path(s) : base_dir / s; };
  try {
    if (!raw.contains("corpus_dir")) throw Error(ErrorKind::kConfig, "corpus_dir is required");
    cfg.corpus_dir = path_of(raw.at("corpus_dir").get<std::string>());
    if (raw.contains("word_vectors")) cfg.word_vectors = path_of(raw["word_vectors"].get<std::string>());
    if (raw.contains("frequencies")) cfg.frequencies = path_of(raw["frequencies"].get<std::string>());
    if (raw.contains("common_component"))
      cfg.common_component = path_of(raw["common_component"].get<std::string>());
    if (raw.contains("common_component_sample"))
      cfg.common_component_sample = path_of(raw["common_component_sample"].get<std::string>());
    if (raw.contains("external_vectors")) {
      for (const auto& [name, p] : raw["external_vectors"].items()) {
        if (is_native_function(name) ||
            std::find(kVectorFunctionNames.begin(), kVectorFunctionNames.end(), name) ==
                kVectorFunctionNames.end())
          detail::unknown_name("external vector function", name,
                               std::array<std::string_view, 2>{"paragraph-vectors", "skip-thought"});
        cfg.external_vectors[name] = path_of(p.get<std::string>());
      }
    }
    if (raw.contains("vector_functions")) {
      cfg.vector_functions.clear();
      for (const auto& f : raw["vector_functions"]) {
        const auto name = f.get<std::string>();
        if (std::find(kVectorFunctionNames.begin(), kVectorFunctionNames.end(), name) ==
            kVectorFunctionNames.end())
          detail::unknown_name("vector function", name, kVectorFunctionNames);
        cfg.vector_functions.push_back(name);
      }
    }
    if (raw.contains("selectors")) {
      cfg.selectors.clear();
      std::vector<std::string_view> names;
      for (auto k : kAllSelectors) names.push_back(selector_name(k));
      for (const auto& s : raw["selectors"]) {
        const auto name = s.get<std::string>();
        auto kind = parse_selector(name);
        if (!kind) detail::unknown_name("selector", name, names);
        cfg.selectors.push_back(*kind);
      }
    }
    if (raw.contains("docvec_strategy")) {
      const auto s = raw["docvec_strategy"].get<std::string>();
      if (s == "simple") cfg.docvec_strategy = DocvecMode::kSimple;
      else if (s == "docvec-avg") cfg.docvec_strategy = DocvecMode::kDocvecAvg;
      else if (s == "both") cfg.docvec_strategy = DocvecMode::kBoth;
      else
        detail::unknown_name("docvec_strategy", s,
                             std::array<std::string_view, 3>{"simple", "docvec-avg", "both"});
    }
    cfg.budget = raw.value("budget", cfg.budget);
    cfg.seed = raw.value("seed", cfg.seed);
    if (raw.contains("output_dir")) cfg.output_dir = path_of(raw["output_dir"].get<std::string>());
    else cfg.output_dir = base_dir / cfg.output_dir;
    cfg.brute_force_pool = raw.value("brute_force_pool", cfg.brute_force_pool);
    cfg.redundancy_pool = raw.value("redundancy_pool", cfg.redundancy_pool);
    cfg.lexrank_damping = raw.value("lexrank_damping", cfg.lexrank_damping);
    cfg.lexrank_tol = raw.value("lexrank_tol", cfg.lexrank_tol);
    cfg.sif_a = raw.value("sif_a", cfg.sif_a);
    cfg.alpha = raw.value("alpha", cfg.alpha);
    cfg.split = raw.value("split", cfg.split);
    cfg.isolated_rouge_n = raw.value("isolated_rouge_n", cfg.isolated_rouge_n);
    cfg.threads = raw.value("threads", cfg.threads);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kConfig, std::string("bad config value: ") + e.what());
  }

  if (cfg.budget <= 0) throw Error(ErrorKind::kConfig, "budget must be positive");
  if (cfg.brute_force_pool < 1) throw Error(ErrorKind::kConfig, "brute_force_pool must be >= 1");
  if (cfg.redundancy_pool < 2) throw Error(ErrorKind::kConfig, "redundancy_pool must be >= 2");
  if (!(cfg.lexrank_damping > 0.0 && cfg.lexrank_damping < 1.0))
    throw Error(ErrorKind::kConfig, "lexrank_damping must be in (0, 1)");
  if (!(cfg.lexrank_tol > 0.0)) throw Error(ErrorKind::kConfig, "lexrank_tol must be positive");
  if (!(cfg.sif_a > 0.0)) throw Error(ErrorKind::kConfig, "sif_a must be positive");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw Error(ErrorKind::kConfig, "alpha must be in (0, 1)");
  if (cfg.isolated_rouge_n != 1 && cfg.isolated_rouge_n != 2)
    throw Error(ErrorKind::kConfig, "isolated_rouge_n must be 1 or 2");
  if (cfg.vector_functions.empty()) throw Error(ErrorKind::kConfig, "no vector functions requested");
  if (cfg.selectors.empty()) throw Error(ErrorKind::kConfig, "no selectors requested");
  for (const auto& f : cfg.vector_functions) {
    if (is_native_function(f) && !cfg.word_vectors)
      throw Error(ErrorKind::kConfig, "vector function '" + f + "' needs word_vectors");
    if (!is_native_function(f) && !cfg.external_vectors.contains(f))
      throw Error(ErrorKind::kConfig, "vector function '" + f + "' needs external_vectors." + f);
  }
  {
    auto sorted = cfg.vector_functions;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error(ErrorKind::kConfig, "vector_functions contains duplicates");
    std::vector<SelectorKind> sel = cfg.selectors;
    std::sort(sel.begin(), sel.end());
    if (std::adjacent_find(sel.begin(), sel.end()) != sel.end())
      throw Error(ErrorKind::kConfig, "selectors contains duplicates");
  }

  nlohmann::json echo = raw;
  echo.erase("output_dir");
  echo.erase("threads");
  echo["vector_functions"] = cfg.vector_functions;
  echo["selectors"] = nlohmann::json::array();
  for (auto k : cfg.selectors) echo["selectors"].push_back(selector_name(k));
  echo["docvec_strategy"] = cfg.docvec_strategy == DocvecMode::kSimple      ? "simple"
                            : cfg.docvec_strategy == DocvecMode::kDocvecAvg ? "docvec-avg"
                                                                            : "both";
  echo["budget"] = cfg.budget;
  echo["seed"] = cfg.seed;
  echo["brute_force_pool"] = cfg.brute_force_pool;
  echo["redundancy_pool"] = cfg.redundancy_pool;
  echo["lexrank_damping"] = cfg.lexrank_damping;
  echo["lexrank_tol"] = cfg.lexrank_tol;
  echo["sif_a"] = cfg.sif_a;
  echo["alpha"] = cfg.alpha;
  echo["split"] = cfg.split;
  echo["isolated_rouge_n"] = cfg.isolated_rouge_n;
  cfg.echo = std::move(echo);
  return cfg;
}

inline ExperimentConfig validate_config(const fs::path& path) {
  std::string text;
  try {
    text = detail::read_file(path);
  } catch (const Error& e) {
    throw Error(ErrorKind::kConfig, e.what());
  }
  nlohmann::json raw;
  try {
    raw = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::kConfig, path.string() + ": offset " + std::to_string(e.byte) + ": " +
                                        e.what());
  }
  return parse_config(raw, path.parent_path());
}

// ---------------------------------------------------------------------------
// Output helpers.

namespace detail {

inline std::string fmt(double v, int precision = 6) {
  if (std::isnan(v)) return "NA";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  // Avoid "-0.000000".
  std::string s(buf);
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, std::initializer_list<std::string_view> header) : out_(path) {
    if (!out_) throw Error(ErrorKind::kIo, "cannot write " + path.string());
    std::vector<std::string> h(header.begin(), header.end());
    row(h);
  }

  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) out_ << (i ? "," : "") << csv_field(fields[i]);
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

inline void write_json(const fs::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

// Runs fn(0..n-1) on up to `threads` workers. fn must not throw.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
}

}  // namespace detail

// ---------------------------------------------------------------------------

// Embedded material for one (vector function, document vector strategy,
// cluster) triple.
struct EmbeddedCluster {
  const DocumentCluster* cluster = nullptr;
  std::vector<Sentence> sentences;  // sentences the function could embed
  std::vector<SentenceVector> vectors;
  std::optional<DocumentVector> doc;
  std::optional<Error> failure;
  std::size_t skipped_sentences = 0;

  SelectorInput input(int budget, std::uint64_t seed) const {
    return SelectorInput{sentences, vectors, *doc, budget, seed};
  }
};

struct CellOutcome {
  std::string cluster_id;
  SelectorKind selector{};
  std::string vector_function;
  DocvecStrategy strategy{};
  std::optional<SummaryCandidate> summary;
  RougeScore rouge;
  std::optional<Error> failure;
};

struct ResultRow {
  std::string selector;
  std::string vector_function;
  DocvecStrategy strategy{};
  int clusters = 0;
  int failed = 0;
  double rouge1 = std::nan("");  // mean x 100
  double rouge2 = std::nan("");
  double p_vs_random = std::nan("");
};

struct ResultTable {
  std::vector<ResultRow> rows;
};

class Experiment {
 public:
  explicit Experiment(ExperimentConfig cfg) : cfg_(std::move(cfg)) {}

  const ExperimentConfig& config() const { return cfg_; }

  // Loads the corpus and vector resources and embeds every cluster.
  void prepare() {
    all_clusters_ = load_corpus(cfg_.corpus_dir);
    if (all_clusters_.empty()) throw Error(ErrorKind::kConfig, "corpus is empty");
    for (const auto& c : all_clusters_) {
      const bool validation = is_validation_cluster(c.cluster_id);
      if (!cfg_.split || !validation) eval_.push_back(&c);
      if (!cfg_.split || validation) train_.push_back(&c);
    }
    if (eval_.empty()) throw Error(ErrorKind::kConfig, "split left no evaluation clusters");
    if (train_.empty()) train_ = eval_;

    const bool need_native = std::any_of(cfg_.vector_functions.begin(), cfg_.vector_functions.end(),
                                         [](const auto& f) { return is_native_function(f); });
    if (need_native) {
      table_ = load_word_vectors(*cfg_.word_vectors);
      freq_ = cfg_.frequencies ? load_frequencies(*cfg_.frequencies)
                               : frequencies_from_corpus(all_clusters_);
    }
    for (const auto& f : cfg_.vector_functions) {
      if (f == "sif-average") {
        embedders_.emplace(f, NativeEmbedder(*table_, *freq_, {VectorKind::kSifAverage, cfg_.sif_a, {}, {}}));
      } else if (f == "arora") {
        common_component_ = fit_or_load_common_component();
        embedders_.emplace(f, NativeEmbedder(*table_, *freq_,
                                             {VectorKind::kArora, cfg_.sif_a, common_component_, {}}));
      } else {
        external_.emplace(f, load_external_vector_file(cfg_.external_vectors.at(f)));
      }
    }
    for (auto strategy : cfg_.strategies())
      for (const auto& f : cfg_.vector_functions)
        for (const auto& c : all_clusters_) embedded_[{f, strategy, c.cluster_id}] = embed(f, strategy, c);
  }

  // Runs every (strategy, function, cluster, selector) cell.
  void run_cells() {
    fit_regressions();
    struct Job {
      std::string function;
      DocvecStrategy strategy;
      const DocumentCluster* cluster;
    };
    std::vector<Job> jobs;
    for (auto strategy : cfg_.strategies())
      for (const auto& f : cfg_.vector_functions)
        for (const auto* c : eval_) jobs.push_back({f, strategy, c});
    std::vector<std::vector<CellOutcome>> results(jobs.size());
    detail::parallel_for(jobs.size(), cfg_.threads, [&](std::size_t j) {
      results[j] = run_job(jobs[j].function, jobs[j].strategy, *jobs[j].cluster);
    });
    cells_.clear();
    for (auto& r : results)
      for (auto& c : r) cells_.push_back(std::move(c));
    std::stable_sort(cells_.begin(), cells_.end(), [](const CellOutcome& a, const CellOutcome& b) {
      return std::tuple(a.strategy, a.selector, a.vector_function, a.cluster_id) <
             std::tuple(b.strategy, b.selector, b.vector_function, b.cluster_id);
    });
  }

  const std::vector<CellOutcome>& cells() const { return cells_; }

  ResultTable result_table(DocvecStrategy strategy) const {
    ResultTable table;
    for (auto sel : cfg_.selectors) {
      for (const auto& f : cfg_.vector_functions) {
        ResultRow row;
        row.selector = selector_name(sel);
        row.vector_function = f;
        row.strategy = strategy;
        std::vector<double> r1;
        std::vector<double> r2;
        std::map<std::string, double> by_cluster;
        for (const auto& c : cells_) {
          if (c.selector != sel || c.vector_function != f || c.strategy != strategy) continue;
          if (c.failure) {
            ++row.failed;
            continue;
          }
          r1.push_back(c.rouge.rouge1);
          r2.push_back(c.rouge.rouge2);
          by_cluster[c.cluster_id] = c.rouge.rouge1;
        }
        row.clusters = static_cast<int>(r1.size());
        if (!r1.empty()) {
          row.rouge1 = 100.0 * stats::mean(r1);
          row.rouge2 = 100.0 * stats::mean(r2);
        }
        if (sel != SelectorKind::kRandom) row.p_vs_random = p_vs_random(by_cluster, f, strategy);
        table.rows.push_back(std::move(row));
      }
    }
    return table;
  }

  // ---- writers -----------------------------------------------------------

  void write_all() {
    fs::create_directories(cfg_.output_dir);
    write_table1();
    write_per_cluster();
    write_summaries();
    write_errors();
    write_scores_json();
    if (cfg_.docvec_strategy == DocvecMode::kBoth) write_table2();
    write_fig1();
    write_fig2();
    write_fig3_and_regression();
    write_fig4();
    write_fig5();
    write_run_json();
  }

  void write_table1() const {
    detail::CsvWriter out(cfg_.output_dir / "table1.csv",
                          {"selector", "vector_function", "docvec_strategy", "clusters", "failed",
                           "rouge1", "rouge2", "p_vs_random", "significant"});
    for (auto strategy : cfg_.strategies()) {
      for (const auto& r : result_table(strategy).rows) {
        std::string sig = "NA";
        if (!std::isnan(r.p_vs_random)) sig = r.p_vs_random < cfg_.alpha ? "yes" : "no";
        out.row({r.selector, r.vector_function, std::string(docvec_strategy_name(strategy)),
                 std::to_string(r.clusters), std::to_string(r.failed), detail::fmt(r.rouge1, 4),
                 detail::fmt(r.rouge2, 4), detail::fmt(r.p_vs_random, 6), sig});
      }
    }
  }

  // cluster_id,selector,vector_function,rouge1,rouge2 for the primary
  // strategy; with "both", the docvec-avg rows go to
  // per_cluster_docvec-avg.csv.
  void write_per_cluster() const {
    const auto strategies = cfg_.strategies();
    for (std::size_t s = 0; s < strategies.size(); ++s) {
      const std::string name = s == 0 ? "per_cluster.csv" : "per_cluster_docvec-avg.csv";
      detail::CsvWriter out(cfg_.output_dir / name,
                            {"cluster_id", "selector", "vector_function", "rouge1", "rouge2"});
      for (const auto& c : cells_) {
        if (c.strategy != strategies[s] || c.failure) continue;
        out.row({c.cluster_id, std::string(selector_name(c.selector)), c.vector_function,
                 detail::fmt(c.rouge.rouge1, 6), detail::fmt(c.rouge.rouge2, 6)});
      }
    }
  }

  void write_summaries() const {
    detail::CsvWriter out(cfg_.output_dir / "summaries.csv",
                          {"cluster_id", "selector", "vector_function", "docvec_strategy", "words",
                           "objective", "short_summary", "component_exhaustion", "sentence_ids"});
    for (const auto& c : cells_) {
      if (!c.summary) continue;
      std::string ids;
      for (const auto& id : c.summary->selected) ids += (ids.empty() ? "" : " ") + id.str();
      out.row({c.cluster_id, std::string(selector_name(c.selector)), c.vector_function,
               std::string(docvec_strategy_name(c.strategy)), std::to_string(c.summary->total_words),
               detail::fmt(c.summary->objective.value_or(std::nan("")), 9),
               c.summary->short_summary ? "1" : "0", c.summary->component_exhaustion ? "1" : "0",
               ids});
    }
  }

  void write_errors() const {
    detail::CsvWriter out(cfg_.output_dir / "errors.csv",
                          {"cluster_id", "selector", "vector_function", "docvec_strategy", "kind",
                           "message"});
    for (const auto& c : cells_) {
      if (!c.failure) continue;
      out.row({c.cluster_id, std::string(selector_name(c.selector)), c.vector_function,
               std::string(docvec_strategy_name(c.strategy)),
               std::string(error_kind_name(c.failure->kind())), c.failure->what()});
    }
  }

  void write_scores_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (auto strategy : cfg_.strategies()) {
      for (const auto& r : result_table(strategy).rows) {
        j.push_back({{"selector", r.selector},
                     {"vector_function", r.vector_function},
                     {"docvec_strategy", docvec_strategy_name(strategy)},
                     {"clusters", r.clusters},
                     {"rouge1", json_number(r.rouge1)},
                     {"rouge2", json_number(r.rouge2)},
                     {"p_vs_random", json_number(r.p_vs_random)}});
      }
    }
    detail::write_json(cfg_.output_dir / "scores.json", j);
  }

  // Selectors that never consult the document vector are omitted.
  void write_table2() const {
    std::vector<CellResult> simple;
    std::vector<CellResult> avg;
    for (const auto& c : cells_) {
      if (c.failure || !uses_document_vector(c.selector)) continue;
      CellResult r{c.cluster_id, std::string(selector_name(c.selector)), c.vector_function,
                   c.rouge.rouge1, c.rouge.rouge2};
      (c.strategy == DocvecStrategy::kSimple ? simple : avg).push_back(std::move(r));
    }
    // Cells that failed under one strategy only are dropped from both sides.
    auto key = [](const CellResult& r) {
      return std::tuple(r.selector, r.vector_function, r.cluster_id);
    };
    std::set<std::tuple<std::string, std::string, std::string>> ks;
    std::set<std::tuple<std::string, std::string, std::string>> ka;
    for (const auto& r : simple) ks.insert(key(r));
    for (const auto& r : avg) ka.insert(key(r));
    std::erase_if(simple, [&](const CellResult& r) { return !ka.contains(key(r)); });
    std::erase_if(avg, [&](const CellResult& r) { return !ks.contains(key(r)); });
    detail::CsvWriter out(cfg_.output_dir / "table2.csv", {"selector", "vector_function", "delta_rouge1"});
    for (const auto& d : docvec_comparison(simple, avg))
      out.row({d.selector, d.vector_function, detail::fmt(d.delta, 4)});
  }

  void write_fig1() {
    detail::CsvWriter rows(cfg_.output_dir / "fig1_cosines.csv",
                           {"vector_function", "docvec_strategy", "cluster_id", "sentence_id", "cosine"});
    detail::CsvWriter summary(cfg_.output_dir / "fig1_summary.csv",
                              {"vector_function", "docvec_strategy", "n", "mean", "stddev", "normality_r2"});
    for (auto strategy : cfg_.strategies()) {
      for (const auto& f : cfg_.vector_functions) {
        std::vector<double> all;
        for (const auto* c : eval_) {
          const auto& e = embedded(f, strategy, *c);
          if (e.failure) continue;
          const auto cos = doc_cosines(e.vectors, *e.doc);
          for (std::size_t i = 0; i < cos.size(); ++i) {
            rows.row({f, std::string(docvec_strategy_name(strategy)), c->cluster_id,
                      e.sentences[i].id.str(), detail::fmt(cos[i], 9)});
            all.push_back(cos[i]);
          }
        }
        nlohmann::json entry = {{"vector_function", f}, {"docvec_strategy", docvec_strategy_name(strategy)}};
        try {
          const auto st = distribution_stats(all);
          summary.row({f, std::string(docvec_strategy_name(strategy)), std::to_string(st.n),
                       detail::fmt(st.mean, 6), detail::fmt(st.stddev, 6), detail::fmt(st.normality_r2, 6)});
          entry.update({{"n", st.n}, {"mean", st.mean}, {"stddev", st.stddev}, {"normality_r2", st.normality_r2}});
        } catch (const Error& e) {
          summary.row({f, std::string(docvec_strategy_name(strategy)), std::to_string(all.size()), "NA",
                       "NA", "NA"});
          entry["error"] = e.what();
        }
        analysis_["fig1"].push_back(entry);
      }
    }
    write_analysis_json();
  }

  void write_fig2() {
    detail::CsvWriter out(cfg_.output_dir / "fig2_optimal.csv",
                          {"vector_function", "docvec_strategy", "cluster_id", "sentence_id",
                           "word_count", "optimal", "cosine", "cosine_length_adjusted"});
    for (auto strategy : cfg_.strategies()) {
      for (const auto& f : cfg_.vector_functions) {
        std::vector<double> opt;
        std::vector<double> non;
        for (const auto* c : eval_) {
          const auto& e = embedded(f, strategy, *c);
          if (e.failure) continue;
          const ReferenceSet refs(c->references);
          DocumentCluster view = *c;
          view.sentences = e.sentences;
          const auto raw = optimal_sentence_split(view, e.vectors, *e.doc, refs, false, cfg_.budget);
          const auto adj = optimal_sentence_split(view, e.vectors, *e.doc, refs, true, cfg_.budget);
          for (std::size_t i = 0; i < e.sentences.size(); ++i) {
            out.row({f, std::string(docvec_strategy_name(strategy)), c->cluster_id,
                     e.sentences[i].id.str(), std::to_string(e.sentences[i].word_count()),
                     raw.is_optimal[i] ? "1" : "0", detail::fmt(raw.cosines[i], 9),
                     detail::fmt(adj.cosines[i], 9)});
          }
          opt.insert(opt.end(), raw.optimal.begin(), raw.optimal.end());
          non.insert(non.end(), raw.non_optimal.begin(), raw.non_optimal.end());
        }
        analysis_["fig2"].push_back({{"vector_function", f},
                                     {"docvec_strategy", docvec_strategy_name(strategy)},
                                     {"optimal_n", opt.size()},
                                     {"optimal_mean", json_number(opt.empty() ? std::nan("") : stats::mean(opt))},
                                     {"non_optimal_n", non.size()},
                                     {"non_optimal_mean", json_number(non.empty() ? std::nan("") : stats::mean(non))}});
      }
    }
    write_analysis_json();
  }

  // Fig. 3 data (isolated ROUGE vs cosine) over the evaluation clusters and
  // the per-dimension regression over the training clusters, both with the
  // primary document vector strategy.
  void write_fig3_and_regression() {
    const DocvecStrategy strategy = cfg_.strategies().front();
    detail::CsvWriter out(cfg_.output_dir / "fig3_rouge_cosine.csv",
                          {"vector_function", "cluster_id", "sentence_id", "isolated_rouge",
                           "log1p_rouge", "cosine", "leverage"});
    detail::CsvWriter reg(cfg_.output_dir / "regression.csv",
                          {"vector_function", "dimension", "coefficient", "p_value", "significant"});
    for (const auto& f : cfg_.vector_functions) {
      std::vector<std::pair<double, double>> pairs;
      std::vector<std::tuple<std::string, std::string>> keys;
      for (const auto* c : eval_) {
        const auto& e = embedded(f, strategy, *c);
        if (e.failure) continue;
        const ReferenceSet refs(c->references);
        for (std::size_t i = 0; i < e.sentences.size(); ++i) {
          pairs.emplace_back(isolated_sentence_rouge(e.sentences[i].text, refs, cfg_.isolated_rouge_n),
                             cosine(e.vectors[i].v, e.doc->v));
          keys.emplace_back(c->cluster_id, e.sentences[i].id.str());
        }
      }
      std::vector<double> cos;
      for (const auto& p : pairs) cos.push_back(p.second);
      const auto lev = simple_leverage(cos);
      for (std::size_t i = 0; i < pairs.size(); ++i)
        out.row({f, std::get<0>(keys[i]), std::get<1>(keys[i]), detail::fmt(pairs[i].first, 9),
                 detail::fmt(std::log1p(pairs[i].first), 9), detail::fmt(pairs[i].second, 9),
                 detail::fmt(lev[i], 9)});
      nlohmann::json entry = {{"vector_function", f}, {"n", pairs.size()}};
      try {
        entry["r"] = rouge_cosine_correlation(pairs);
      } catch (const Error& e) {
        entry["error"] = e.what();
      }
      analysis_["fig3"].push_back(entry);

      std::vector<RegressionSample> samples;
      for (const auto* c : train_) {
        const auto& e = embedded(f, strategy, *c);
        if (e.failure) continue;
        const ReferenceSet refs(c->references);
        for (std::size_t i = 0; i < e.sentences.size(); ++i)
          samples.push_back({e.vectors[i].v, e.doc->v,
                             isolated_sentence_rouge(e.sentences[i].text, refs, cfg_.isolated_rouge_n)});
      }
      nlohmann::json rj = {{"vector_function", f}, {"samples", samples.size()}};
      try {
        const auto report = dimension_regression(samples, cfg_.alpha);
        std::set<int> sig(report.significant_dims.begin(), report.significant_dims.end());
        for (Eigen::Index d = 0; d < report.coefficients.size(); ++d)
          reg.row({f, std::to_string(d), detail::fmt(report.coefficients[d], 9),
                   detail::fmt(report.p_values[d], 9), sig.contains(static_cast<int>(d)) ? "1" : "0"});
        rj.update({{"alpha", report.alpha},
                   {"bonferroni_threshold", report.bonferroni_threshold},
                   {"significant_dims", report.significant_dims},
                   {"ridge", report.ridge}});
      } catch (const Error& e) {
        rj["error"] = e.what();
      }
      analysis_["regression"].push_back(rj);
    }
    write_analysis_json();
  }

  void write_fig4() const {
    detail::CsvWriter out(cfg_.output_dir / "fig4_greedy_trace.csv",
                          {"vector_function", "docvec_strategy", "cluster_id", "step", "sentence_id",
                           "standalone_cosine", "objective_before", "objective_after", "sp_dot_s"});
    for (auto strategy : cfg_.strategies()) {
      for (const auto& f : cfg_.vector_functions) {
        for (const auto* c : eval_) {
          const auto& e = embedded(f, strategy, *c);
          if (e.failure) continue;
          for (const auto& step : greedy_trace(e.input(cfg_.budget, 0))) {
            out.row({f, std::string(docvec_strategy_name(strategy)), c->cluster_id,
                     std::to_string(step.step), step.id.str(), detail::fmt(step.standalone_cosine, 9),
                     detail::fmt(step.objective_before.value_or(std::nan("")), 9),
                     detail::fmt(step.objective_after, 9),
                     detail::fmt(step.sp_dot_s.value_or(std::nan("")), 9)});
          }
        }
      }
    }
  }

  void write_fig5() const {
    detail::CsvWriter out(cfg_.output_dir / "fig5_denominator.csv", {"i", "x", "denominator"});
    const auto xs = unit_interval_grid(101);
    for (int i = 1; i <= 10; ++i) {
      const auto ys = denominator_surface(i, xs);
      for (std::size_t k = 0; k < xs.size(); ++k)
        out.row({std::to_string(i), detail::fmt(xs[k], 2), detail::fmt(ys[k], 9)});
    }
  }

  void write_run_json() const {
    nlohmann::json skipped = nlohmann::json::object();
    for (const auto& [key, e] : embedded_)
      if (e.skipped_sentences > 0)
        skipped[std::get<0>(key) + "/" + std::string(docvec_strategy_name(std::get<1>(key))) + "/" +
                std::get<2>(key)] = e.skipped_sentences;
    nlohmann::json eval_ids = nlohmann::json::array();
    for (const auto* c : eval_) eval_ids.push_back(c->cluster_id);
    nlohmann::json train_ids = nlohmann::json::array();
    for (const auto* c : train_) train_ids.push_back(c->cluster_id);
    nlohmann::json regressions = nlohmann::json::object();
    for (const auto& [key, r] : regressions_) {
      const std::string k = key.first + "/" + std::string(docvec_strategy_name(key.second));
      if (r) regressions[k] = {{"c0", r->c0}, {"c1", r->c1}, {"c2", r->c2}};
      else regressions[k] = nullptr;
    }
    nlohmann::json j = {{"vecsum_version", kVersion},
                        {"eigen_version", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                              std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                              std::to_string(EIGEN_MINOR_VERSION)},
                        {"seed", cfg_.seed},
                        {"config", cfg_.echo},
                        {"evaluation_clusters", eval_ids},
                        {"training_clusters", train_ids},
                        {"skipped_sentences", skipped},
                        {"redundancy_regressions", regressions},
                        {"cells", cells_.size()},
                        {"failed_cells", std::count_if(cells_.begin(), cells_.end(),
                                                       [](const auto& c) { return c.failure.has_value(); })}};
    detail::write_json(cfg_.output_dir / "run.json", j);
  }

  void write_analysis_json() const { detail::write_json(cfg_.output_dir / "analysis.json", analysis_); }

  const EmbeddedCluster& embedded(const std::string& f, DocvecStrategy s, const DocumentCluster& c) const {
    return embedded_.at({f, s, c.cluster_id});
  }

  const std::vector<const DocumentCluster*>& evaluation_clusters() const { return eval_; }

 private:
  static nlohmann::json json_number(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
  }

  static bool uses_document_vector(SelectorKind k) {
    return k != SelectorKind::kRandom && k != SelectorKind::kCluster && k != SelectorKind::kPca &&
           k != SelectorKind::kLexRank;
  }

  Vector fit_or_load_common_component() const {
    if (cfg_.common_component) {
      Vector u = load_vector_file(*cfg_.common_component);
      if (u.size() != table_->dim)
        throw Error(ErrorKind::kDimensionMismatch, "common component dim differs from word vectors");
      return normalized(u, "common component");
    }
    std::vector<Vector> sample;
    auto add = [&](std::span<const Token> tokens) {
      try {
        sample.push_back(normalized(sif_sum(tokens, *table_, *freq_, cfg_.sif_a), "sample sentence"));
      } catch (const Error&) {
      }
    };
    if (cfg_.common_component_sample) {
      std::istringstream in(detail::read_file(*cfg_.common_component_sample));
      std::string line;
      while (std::getline(in, line)) add(tokenize(line));
    } else {
      for (const auto& c : all_clusters_)
        for (const auto& s : c.sentences) add(s.tokens);
    }
    return fit_common_component(std::span<const Vector>(sample));
  }

  EmbeddedCluster embed(const std::string& f, DocvecStrategy strategy, const DocumentCluster& c) const {
    EmbeddedCluster e;
    e.cluster = &c;
    try {
      std::optional<Vector> ingested;
      const NativeEmbedder* native = nullptr;
      if (auto it = embedders_.find(f); it != embedders_.end()) {
        native = &it->second;
        for (const auto& s : c.sentences) {
          try {
            e.vectors.push_back(native->embed(s));
            e.sentences.push_back(s);
          } catch (const Error& err) {
            if (err.kind() != ErrorKind::kEmptyEmbedding && err.kind() != ErrorKind::kZeroVector) throw;
            ++e.skipped_sentences;
          }
        }
      } else {
        auto ext = external_vectors_for(external_.at(f), c);
        e.sentences = c.sentences;
        e.vectors = std::move(ext.sentences);
        ingested = std::move(ext.document);
      }
      if (e.sentences.empty())
        throw Error(ErrorKind::kEmptyEmbedding, "no sentence of cluster " + c.cluster_id + " could be embedded");
      e.doc = document_vector(c, e.vectors, strategy, native, ingested);
    } catch (const Error& err) {
      e.failure = err;
    }
    return e;
  }

  void fit_regressions() {
    if (std::find(cfg_.selectors.begin(), cfg_.selectors.end(), SelectorKind::kNearNonredundant) ==
        cfg_.selectors.end())
      return;
    for (auto strategy : cfg_.strategies()) {
      for (const auto& f : cfg_.vector_functions) {
        std::vector<std::pair<double, double>> pairs;
        for (const auto* c : train_) {
          const auto& e = embedded(f, strategy, *c);
          if (e.failure) continue;
          const auto p = redundancy_training_pairs(e.input(cfg_.budget, 0));
          pairs.insert(pairs.end(), p.begin(), p.end());
        }
        try {
          regressions_[{f, strategy}] = fit_redundancy_regression(pairs);
        } catch (const Error& err) {
          regressions_[{f, strategy}] = std::nullopt;
          regression_errors_.insert_or_assign(std::pair(f, strategy), err);
        }
      }
    }
  }

  std::vector<CellOutcome> run_job(const std::string& f, DocvecStrategy strategy,
                                   const DocumentCluster& c) const {
    std::vector<CellOutcome> out;
    const auto& e = embedded(f, strategy, c);
    const ReferenceSet refs(c.references);
    SelectorParams params;
    params.brute_force_pool = cfg_.brute_force_pool;
    params.redundancy_pool = cfg_.redundancy_pool;
    params.lexrank = {cfg_.lexrank_damping, cfg_.lexrank_tol};
    if (auto it = regressions_.find({f, strategy}); it != regressions_.end()) params.regression = it->second;
    for (auto sel : cfg_.selectors) {
      CellOutcome cell;
      cell.cluster_id = c.cluster_id;
      cell.selector = sel;
      cell.vector_function = f;
      cell.strategy = strategy;
      try {
        if (e.failure) throw *e.failure;
        if (sel == SelectorKind::kNearNonredundant && !params.regression) {
          auto it = regression_errors_.find({f, strategy});
          throw it != regression_errors_.end() ? it->second
                                               : Error(ErrorKind::kDegenerateFit, "no regression");
        }
        const auto input = e.input(cfg_.budget, detail::mix_seed(cfg_.seed, c.cluster_id));
        cell.summary = run_selector(sel, input, params);
        cell.rouge = refs.score(summary_text(e.sentences, cell.summary->indices));
      } catch (const Error& err) {
        cell.failure = err;
        cell.summary.reset();
      }
      out.push_back(std::move(cell));
    }
    return out;
  }

  double p_vs_random(const std::map<std::string, double>& cell, const std::string& f,
                     DocvecStrategy strategy) const {
    std::map<std::string, double> random;
    for (const auto& c : cells_)
      if (c.selector == SelectorKind::kRandom && c.vector_function == f && c.strategy == strategy && !c.failure)
        random[c.cluster_id] = c.rouge.rouge1;
    std::vector<double> a;
    std::vector<double> b;
    for (const auto& [id, v] : cell)
      if (auto it = random.find(id); it != random.end()) {
        a.push_back(v);
        b.push_back(it->second);
      }
    try {
      return paired_t_test(a, b).p_value;
    } catch (const Error&) {
      return std::nan("");
    }
  }

  ExperimentConfig cfg_;
  std::vector<DocumentCluster> all_clusters_;
  std::vector<const DocumentCluster*> eval_;
  std::vector<const DocumentCluster*> train_;
  std::optional<WordVectorTable> table_;
  std::optional<FrequencyTable> freq_;
  std::optional<Vector> common_component_;
  std::map<std::string, NativeEmbedder> embedders_;
  std::map<std::string, ExternalVectorFile> external_;
  std::map<std::tuple<std::string, DocvecStrategy, std::string>, EmbeddedCluster> embedded_;
  std::map<std::pair<std::string, DocvecStrategy>, std::optional<RedundancyRegression>> regressions_;
  std::map<std::pair<std::string, DocvecStrategy>, Error> regression_errors_;
  std::vector<CellOutcome> cells_;
  nlohmann::json analysis_ = nlohmann::json::object();
};

// Full pipeline: embeddings, every matrix cell, all tables and figures.
inline ResultTable run_matrix(const ExperimentConfig& cfg) {
  Experiment exp(cfg);
  exp.prepare();
  exp.run_cells();
  exp.write_all();
  return exp.result_table(cfg.strategies().front());
}

inline constexpr std::array<std::string_view, 7> kAnalysisNames = {
    "fig1", "fig2", "fig3", "fig4", "fig5", "regression", "table2"};

// Runs one named analysis and writes only its artifacts (plus analysis.json).
inline void run_analysis(const ExperimentConfig& cfg, std::string_view name) {
  if (std::find(kAnalysisNames.begin(), kAnalysisNames.end(), name) == kAnalysisNames.end())
    detail::unknown_name("analysis", name, kAnalysisNames);
  Experiment exp(cfg);
  fs::create_directories(cfg.output_dir);
  if (name == "fig5") {
    exp.write_fig5();
    return;
  }
  if (name == "table2" && cfg.docvec_strategy != DocvecMode::kBoth)
    throw Error(ErrorKind::kConfig, "table2 needs docvec_strategy \"both\"");
  exp.prepare();
  if (name == "fig1") exp.write_fig1();
  else if (name == "fig2") exp.write_fig2();
  else if (name == "fig3" || name == "regression") exp.write_fig3_and_regression();
  else if (name == "fig4") exp.write_fig4();
  else if (name == "table2") {
    exp.run_cells();
    exp.write_table2();
  }
}

}  // namespace vecsum
