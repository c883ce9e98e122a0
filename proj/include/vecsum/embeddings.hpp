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

// Sentence and document vectors.
//
// Native vector functions weight word vectors by smooth inverse frequency
// a / (a + p(w)) and average them ("sif-average"); "arora" additionally
// projects out a common component fitted as the first uncentered principal
// direction of a sample of sentence vectors. Other encoders are supported
// by ingesting precomputed vectors from a TSV file.
//
// Every SentenceVector and DocumentVector produced here has unit norm.

#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vecsum/corpus.hpp"
#include "vecsum/error.hpp"
#include "vecsum/linalg.hpp"

namespace vecsum {

struct WordVectorTable {
  int dim = 0;
  std::unordered_map<std::string, Vector> entries;
  // Words that appeared more than once in the source (last one wins).
  std::size_t duplicates = 0;

  const Vector* find(const std::string& word) const {
    auto it = entries.find(word);
    return it == entries.end() ? nullptr : &it->second;
  }
};

struct FrequencyTable {
  std::unordered_map<std::string, std::uint64_t> counts;
  std::uint64_t total = 0;

  double probability(const std::string& word) const {
    if (total == 0) return 0.0;
    auto it = counts.find(word);
    return it == counts.end() ? 0.0
                              : static_cast<double>(it->second) / static_cast<double>(total);
  }

  void add(const std::string& word, std::uint64_t count) {
    counts[word] += count;
    total += count;
  }
};

enum class VectorKind { kSifAverage, kArora, kExternal };

struct VectorFunctionConfig {
  VectorKind kind = VectorKind::kSifAverage;
  double sif_a = 1e-3;
  std::optional<Vector> common_component;
  std::vector<std::filesystem::path> external_paths;

  void validate() const {
    if (!(sif_a > 0.0))
      throw Error(ErrorKind::kConfig, "sif_a must be positive");
    if (common_component && std::abs(common_component->norm() - 1.0) > 1e-9)
      throw Error(ErrorKind::kConfig, "common component must have unit norm");
    if (kind == VectorKind::kArora && !common_component)
      throw Error(ErrorKind::kConfig, "arora requires a common component");
    if (kind == VectorKind::kExternal && external_paths.empty())
      throw Error(ErrorKind::kConfig, "external vector function needs a vector file");
  }
};

struct SentenceVector {
  SentenceId sentence_id;
  Vector v;
};

enum class DocvecStrategy { kSimple, kDocvecAvg };

inline std::string_view docvec_strategy_name(DocvecStrategy s) {
  return s == DocvecStrategy::kSimple ? "simple" : "docvec-avg";
}

struct DocumentVector {
  std::string cluster_id;
  Vector v;
  DocvecStrategy strategy = DocvecStrategy::kSimple;
};

namespace detail {

inline double parse_double(std::string_view field, std::size_t line,
                           const std::string& source) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (!field.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value))
    throw Error(ErrorKind::kParse, source + " line " + std::to_string(line) +
                                       ": cannot parse number '" + std::string(field) + "'");
  return value;
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline Vector parse_vector(std::span<const std::string_view> fields, std::size_t line,
                           const std::string& source) {
  Vector v(static_cast<Eigen::Index>(fields.size()));
  for (std::size_t i = 0; i < fields.size(); ++i)
    v[static_cast<Eigen::Index>(i)] = parse_double(fields[i], line, source);
  return v;
}

}  // namespace detail

// GloVe-style text: "word f1 ... fd" per line.
inline WordVectorTable parse_word_vectors(std::istream& in,
                                          const std::string& source = "word vectors") {
  WordVectorTable table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto fields = detail::split_ws(line);
    if (fields.empty()) continue;
    if (fields.size() < 2)
      throw Error(ErrorKind::kParse,
                  source + " line " + std::to_string(lineno) + ": word without vector");
    const int dim = static_cast<int>(fields.size() - 1);
    if (table.dim == 0) {
      table.dim = dim;
    } else if (dim != table.dim) {
      throw Error(ErrorKind::kDimensionMismatch,
                  source + " line " + std::to_string(lineno) + ": expected " +
                      std::to_string(table.dim) + " values, found " + std::to_string(dim));
    }
    Vector v = detail::parse_vector(std::span(fields).subspan(1), lineno, source);
    auto [it, inserted] = table.entries.insert_or_assign(std::string(fields[0]), std::move(v));
    if (!inserted) ++table.duplicates;
  }
  if (table.entries.empty())
    throw Error(ErrorKind::kParse, source + ": no word vectors");
  return table;
}

inline WordVectorTable load_word_vectors(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  return parse_word_vectors(in, path.string());
}

// TSV "word<TAB>count".
inline FrequencyTable parse_frequencies(std::istream& in,
                                        const std::string& source = "frequencies") {
  FrequencyTable table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw Error(ErrorKind::kParse, source + " line " + std::to_string(lineno) + ": missing tab");
    std::string_view count_field = std::string_view(line).substr(tab + 1);
    std::uint64_t count = 0;
    auto [ptr, ec] = std::from_chars(count_field.data(),
                                     count_field.data() + count_field.size(), count);
    if (ec != std::errc() || ptr != count_field.data() + count_field.size() || count == 0)
      throw Error(ErrorKind::kParse, source + " line " + std::to_string(lineno) +
                                         ": count must be a positive integer");
    table.add(detail::ascii_lower(line.substr(0, tab)), count);
  }
  return table;
}

inline FrequencyTable load_frequencies(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  return parse_frequencies(in, path.string());
}

inline FrequencyTable frequencies_from_corpus(std::span<const DocumentCluster> clusters) {
  FrequencyTable table;
  for (const auto& c : clusters)
    for (const auto& s : c.sentences)
      for (const auto& t : s.tokens) table.add(t.lowercased, 1);
  return table;
}

inline double sif_weight(const std::string& word, const FrequencyTable& freq, double a) {
  return a / (a + freq.probability(word));
}

struct EmbedStats {
  std::size_t known = 0;
  std::size_t oov = 0;
};

// Unnormalized SIF average over known tokens; OOV tokens are skipped.
inline Vector sif_sum(std::span<const Token> tokens, const WordVectorTable& table,
                      const FrequencyTable& freq, double a, EmbedStats* stats = nullptr) {
  Vector sum = Vector::Zero(table.dim);
  EmbedStats local;
  for (const auto& t : tokens) {
    const Vector* wv = table.find(t.lowercased);
    if (wv == nullptr) {
      ++local.oov;
      continue;
    }
    sum += sif_weight(t.lowercased, freq, a) * *wv;
    ++local.known;
  }
  if (stats != nullptr) *stats = local;
  if (local.known == 0)
    throw Error(ErrorKind::kEmptyEmbedding, "no token is in the word vector table");
  return sum / static_cast<double>(local.known);
}

inline SentenceVector sif_sentence_vector(const Sentence& sentence, const WordVectorTable& table,
                                          const FrequencyTable& freq, double a,
                                          EmbedStats* stats = nullptr) {
  Vector sum;
  try {
    sum = sif_sum(sentence.tokens, table, freq, a, stats);
  } catch (const Error& e) {
    throw Error(e.kind(), "sentence " + sentence.id.str() + ": " + e.what());
  }
  return {sentence.id, normalized(sum, "SIF average of " + sentence.id.str())};
}

// v - (v.u)u, without renormalizing.
inline Vector project_out(const Vector& v, const Vector& u) {
  require_same_dim(v, u, "common component");
  return v - v.dot(u) * u;
}

inline Vector remove_common_component(const Vector& v, const Vector& u) {
  Vector r = project_out(v, u);
  if (r.norm() <= 1e-12 * v.norm())
    throw Error(ErrorKind::kZeroVector, "vector is parallel to the common component");
  return r.normalized();
}

inline Vector fit_common_component(std::span<const Vector> sample,
                                   PowerIterationOptions opts = {}) {
  if (sample.size() < 2)
    throw Error(ErrorKind::kDegenerateSample, "common component needs at least 2 vectors");
  const Eigen::Index dim = sample.front().size();
  Matrix rows(static_cast<Eigen::Index>(sample.size()), dim);
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (sample[i].size() != dim)
      throw Error(ErrorKind::kDimensionMismatch, "common component sample dims differ");
    rows.row(static_cast<Eigen::Index>(i)) = sample[i].transpose();
  }
  auto comps = principal_components(rows, 1, opts);
  if (comps.empty())
    throw Error(ErrorKind::kDegenerateSample, "common component sample is all zero");
  return comps.front().direction;
}

inline Vector fit_common_component(std::span<const SentenceVector> sample,
                                   PowerIterationOptions opts = {}) {
  std::vector<Vector> vs;
  vs.reserve(sample.size());
  for (const auto& s : sample) vs.push_back(s.v);
  return fit_common_component(std::span<const Vector>(vs), opts);
}

inline SentenceVector arora_sentence_vector(const Sentence& sentence,
                                            const WordVectorTable& table,
                                            const FrequencyTable& freq,
                                            const VectorFunctionConfig& config,
                                            EmbedStats* stats = nullptr) {
  if (!config.common_component)
    throw Error(ErrorKind::kConfig, "arora requires a common component");
  SentenceVector sv = sif_sentence_vector(sentence, table, freq, config.sif_a, stats);
  try {
    sv.v = remove_common_component(sv.v, *config.common_component);
  } catch (const Error& e) {
    throw Error(e.kind(), "sentence " + sentence.id.str() + ": " + e.what());
  }
  return sv;
}

// A native (word-vector based) vector function.
class NativeEmbedder {
 public:
  NativeEmbedder(const WordVectorTable& table, const FrequencyTable& freq,
                 VectorFunctionConfig config)
      : table_(&table), freq_(&freq), config_(std::move(config)) {
    config_.validate();
    if (config_.kind == VectorKind::kExternal)
      throw Error(ErrorKind::kConfig, "NativeEmbedder cannot embed with external vectors");
    if (config_.common_component && config_.common_component->size() != table.dim)
      throw Error(ErrorKind::kDimensionMismatch, "common component dim differs from table");
  }

  const VectorFunctionConfig& config() const { return config_; }

  Vector embed(std::span<const Token> tokens, EmbedStats* stats = nullptr) const {
    Vector v = normalized(sif_sum(tokens, *table_, *freq_, config_.sif_a, stats), "SIF average");
    if (config_.kind == VectorKind::kArora)
      v = remove_common_component(v, *config_.common_component);
    return v;
  }

  SentenceVector embed(const Sentence& sentence, EmbedStats* stats = nullptr) const {
    if (config_.kind == VectorKind::kArora)
      return arora_sentence_vector(sentence, *table_, *freq_, config_, stats);
    return sif_sentence_vector(sentence, *table_, *freq_, config_.sif_a, stats);
  }

  std::vector<SentenceVector> embed(const DocumentCluster& cluster) const {
    std::vector<SentenceVector> out;
    out.reserve(cluster.sentences.size());
    for (const auto& s : cluster.sentences) out.push_back(embed(s));
    return out;
  }

 private:
  const WordVectorTable* table_;
  const FrequencyTable* freq_;
  VectorFunctionConfig config_;
};

// Precomputed vectors: "cluster/doc/sentence<TAB>f1 ... fd", plus optional
// document-level rows keyed "cluster/doc".
struct ExternalVectorFile {
  int dim = 0;
  std::unordered_map<std::string, Vector> rows;
};

inline ExternalVectorFile parse_external_vectors(std::istream& in,
                                                 const std::string& source = "external vectors") {
  ExternalVectorFile file;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw Error(ErrorKind::kParse, source + " line " + std::to_string(lineno) + ": missing tab");
    auto fields = detail::split_ws(std::string_view(line).substr(tab + 1));
    if (fields.empty())
      throw Error(ErrorKind::kParse, source + " line " + std::to_string(lineno) + ": empty vector");
    const int dim = static_cast<int>(fields.size());
    if (file.dim == 0) {
      file.dim = dim;
    } else if (dim != file.dim) {
      throw Error(ErrorKind::kDimensionMismatch,
                  source + " line " + std::to_string(lineno) + ": expected " +
                      std::to_string(file.dim) + " values, found " + std::to_string(dim));
    }
    file.rows.insert_or_assign(line.substr(0, tab), detail::parse_vector(fields, lineno, source));
  }
  return file;
}

inline ExternalVectorFile load_external_vector_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  return parse_external_vectors(in, path.string());
}

struct ExternalVectors {
  std::vector<SentenceVector> sentences;  // aligned with cluster.sentences
  std::optional<Vector> document;
};

inline ExternalVectors external_vectors_for(const ExternalVectorFile& file,
                                            const DocumentCluster& cluster) {
  ExternalVectors out;
  for (const auto& s : cluster.sentences) {
    const std::string key = s.id.str();
    auto it = file.rows.find(key);
    if (it == file.rows.end())
      throw Error(ErrorKind::kIncompleteVectors, "no vector for sentence " + key);
    out.sentences.push_back({s.id, normalized(it->second, "external vector " + key)});
  }
  if (auto it = file.rows.find(cluster.cluster_id + "/doc"); it != file.rows.end())
    out.document = normalized(it->second, "external document vector " + cluster.cluster_id);
  return out;
}

inline ExternalVectors load_external_sentence_vectors(const std::filesystem::path& path,
                                                      const DocumentCluster& cluster) {
  return external_vectors_for(load_external_vector_file(path), cluster);
}

// `native` is required for the simple strategy unless `ingested` holds a
// precomputed document-level vector.
inline DocumentVector document_vector(const DocumentCluster& cluster,
                                      std::span<const SentenceVector> sentence_vectors,
                                      DocvecStrategy strategy,
                                      const NativeEmbedder* native,
                                      const std::optional<Vector>& ingested = std::nullopt) {
  DocumentVector out{cluster.cluster_id, {}, strategy};
  if (strategy == DocvecStrategy::kSimple) {
    if (native != nullptr) {
      const auto tokens = tokenize(cluster.full_text());
      out.v = native->embed(tokens);
    } else if (ingested) {
      out.v = normalized(*ingested, "document vector");
    } else {
      throw Error(ErrorKind::kConfig, "simple document vector for cluster " + cluster.cluster_id +
                                          " needs a native vector function or a '/doc' row");
    }
    return out;
  }
  if (sentence_vectors.empty())
    throw Error(ErrorKind::kEmptyEmbedding, "docvec-avg needs at least one sentence vector");
  Vector mean = Vector::Zero(sentence_vectors.front().v.size());
  for (const auto& sv : sentence_vectors) {
    require_same_dim(mean, sv.v, "docvec-avg");
    mean += sv.v.normalized();
  }
  mean /= static_cast<double>(sentence_vectors.size());
  out.v = normalized(mean, "docvec-avg of " + cluster.cluster_id);
  return out;
}

// One line, space-separated, full round-trip precision.
inline std::string format_vector(const Vector& v) {
  std::ostringstream out;
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
  return out.str();
}

inline Vector load_vector_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto fields = detail::split_ws(line);
    if (!fields.empty()) return detail::parse_vector(fields, lineno, path.string());
  }
  throw Error(ErrorKind::kParse, path.string() + ": empty vector file");
}

}  // namespace vecsum
