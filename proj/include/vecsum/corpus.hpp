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

// Document clusters, sentence splitting and tokenization.
//
// The splitter and tokenizer are deliberately simple rule systems. Every
// other module (embeddings, selectors, ROUGE) tokenizes through tokenize()
// so that word budgets and n-gram counts agree on what a "word" is.

#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>
#include "vecsum/error.hpp"

namespace vecsum {

struct Token {
  std::string surface;
  std::string lowercased;

  friend bool operator==(const Token&, const Token&) = default;
};

struct SentenceId {
  std::string cluster;
  int doc = 0;
  int sentence = 0;

  // "cluster/doc/sentence", the key used by external vector files.
  std::string str() const {
    return cluster + "/" + std::to_string(doc) + "/" + std::to_string(sentence);
  }

  friend auto operator<=>(const SentenceId&, const SentenceId&) = default;
  friend bool operator==(const SentenceId&, const SentenceId&) = default;
};

struct Sentence {
  SentenceId id;
  std::string text;
  std::vector<Token> tokens;

  std::size_t word_count() const { return tokens.size(); }

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct DocumentCluster {
  std::string cluster_id;
  // Raw text of each document, in order.
  std::vector<std::string> document_texts;
  // All sentences of all documents, in document order.
  std::vector<Sentence> sentences;
  std::vector<std::string> references;

  std::string full_text() const {
    std::string out;
    for (std::size_t i = 0; i < document_texts.size(); ++i) {
      if (i > 0) out += "\n\n";
      out += document_texts[i];
    }
    return out;
  }

  std::size_t total_words() const {
    std::size_t n = 0;
    for (const auto& s : sentences) n += s.word_count();
    return n;
  }

  friend bool operator==(const DocumentCluster&, const DocumentCluster&) = default;
};

enum class ClusterFormat { kJsonCluster, kPlaintextDir };

namespace detail {

inline bool is_ascii_punct(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u < 128 && std::ispunct(u) != 0;
}

inline bool is_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

inline std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    const auto u = static_cast<unsigned char>(c);
    if (u < 128) c = static_cast<char>(std::tolower(u));
  }
  return out;
}

inline std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

// Abbreviations that do not end a sentence. Mirrors data/abbreviations.txt.
inline const std::unordered_set<std::string>& default_abbreviations() {
  static const std::unordered_set<std::string> kAbbreviations = {
      "mr",   "mrs",  "ms",   "dr",    "prof", "sr",   "jr",   "st",
      "mt",   "gen",  "gov",  "sen",   "rep",  "col",  "lt",   "sgt",
      "capt", "cmdr", "adm",  "maj",   "rev",  "hon",  "pres", "inc",
      "corp", "co",   "ltd",  "bros",  "vs",   "etc",  "no",   "jan",
      "feb",  "mar",  "apr",  "jun",   "jul",  "aug",  "sep",  "sept",
      "oct",  "nov",  "dec",  "ave",   "blvd", "rd",   "ft",   "dept",
      "univ", "est",  "approx", "fig", "e.g",  "i.e",  "a.m",  "p.m",
      "u.s",  "u.k",  "u.n"};
  return kAbbreviations;
}

// One abbreviation per line, '#' starts a comment, case-insensitive.
inline std::unordered_set<std::string> load_abbreviations(
    const std::filesystem::path& path) {
  std::istringstream in(detail::read_file(path));
  std::unordered_set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.back() == '.') line.pop_back();
    out.insert(detail::ascii_lower(line));
  }
  return out;
}

namespace detail {

// The word ending at `end` (exclusive), minus leading punctuation.
inline std::string_view word_before(std::string_view text, std::size_t end) {
  std::size_t b = end;
  while (b > 0 && !is_space(text[b - 1])) --b;
  while (b < end && is_ascii_punct(text[b])) ++b;
  return text.substr(b, end - b);
}

inline bool is_abbreviation(std::string_view word,
                            const std::unordered_set<std::string>& stoplist) {
  if (word.empty()) return false;
  // Single capital letter: an initial ("J. Smith").
  if (word.size() == 1 && std::isupper(static_cast<unsigned char>(word[0])))
    return true;
  // Dotted forms such as "U.S" or "a.m".
  if (word.find('.') != std::string_view::npos) return true;
  return stoplist.contains(ascii_lower(word));
}

inline bool is_closer(char c) {
  return c == '"' || c == '\'' || c == ')' || c == ']';
}

inline bool is_opener(char c) {
  return c == '"' || c == '\'' || c == '`' || c == '(' || c == '[';
}

}  // namespace detail

// Splits at '.', '!' or '?' (plus trailing closing quotes/brackets) when
// followed by whitespace and then an uppercase letter or an opening quote.
// A '.' after a stoplisted abbreviation, an initial, or a dotted word does
// not split.
inline std::vector<std::string> split_sentences(
    std::string_view text,
    const std::unordered_set<std::string>& abbreviations =
        default_abbreviations()) {
  std::vector<std::string> out;
  const std::size_t n = text.size();
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < n) {
    const char c = text[i];
    if (c != '.' && c != '!' && c != '?') {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < n && (text[j] == '.' || text[j] == '!' || text[j] == '?')) ++j;
    const bool single_period = c == '.' && j == i + 1;
    while (j < n && detail::is_closer(text[j])) ++j;
    if (j >= n || !detail::is_space(text[j])) {
      i = j;
      continue;
    }
    std::size_t k = j;
    while (k < n && detail::is_space(text[k])) ++k;
    if (k >= n) break;
    const bool next_starts =
        std::isupper(static_cast<unsigned char>(text[k])) != 0 ||
        detail::is_opener(text[k]);
    const bool abbreviation =
        single_period &&
        detail::is_abbreviation(detail::word_before(text, i), abbreviations);
    if (next_starts && !abbreviation) {
      std::string sentence = detail::trim(text.substr(start, j - start));
      if (!sentence.empty()) out.push_back(std::move(sentence));
      start = k;
    }
    i = k;
  }
  std::string tail = detail::trim(text.substr(std::min(start, n)));
  if (!tail.empty()) out.push_back(std::move(tail));
  return out;
}

// Whitespace split, leading/trailing ASCII punctuation stripped, lowercased.
// Internal punctuation survives ("U.S.-led" -> "u.s.-led").
inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    while (i < n && detail::is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < n && !detail::is_space(text[j])) ++j;
    std::size_t b = i;
    std::size_t e = j;
    while (b < e && detail::is_ascii_punct(text[b])) ++b;
    while (e > b && detail::is_ascii_punct(text[e - 1])) --e;
    if (e > b) {
      std::string surface(text.substr(b, e - b));
      std::string lower = detail::ascii_lower(surface);
      out.push_back(Token{std::move(surface), std::move(lower)});
    }
    i = j;
  }
  return out;
}

inline std::size_t count_words(std::string_view text) {
  return tokenize(text).size();
}

// Builds a cluster from per-document sentence lists. Sentences with no
// tokens are dropped before indices are assigned.
inline DocumentCluster make_cluster(
    std::string cluster_id, const std::vector<std::vector<std::string>>& docs,
    std::vector<std::string> references,
    std::optional<std::vector<std::string>> raw_texts = std::nullopt) {
  if (docs.empty())
    throw Error(ErrorKind::kParse, "cluster '" + cluster_id + "' has no documents");
  if (references.empty())
    throw Error(ErrorKind::kMissingReference,
                "cluster '" + cluster_id + "' has no reference summaries");
  DocumentCluster cluster;
  cluster.cluster_id = std::move(cluster_id);
  cluster.references = std::move(references);
  for (std::size_t d = 0; d < docs.size(); ++d) {
    int index = 0;
    std::string joined;
    for (const auto& text : docs[d]) {
      auto tokens = tokenize(text);
      if (!joined.empty()) joined += ' ';
      joined += text;
      if (tokens.empty()) continue;
      cluster.sentences.push_back(Sentence{
          SentenceId{cluster.cluster_id, static_cast<int>(d), index++}, text,
          std::move(tokens)});
    }
    cluster.document_texts.push_back(raw_texts ? (*raw_texts)[d] : joined);
  }
  return cluster;
}

inline DocumentCluster parse_json_cluster(std::string_view content) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(content);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kParse,
                "malformed JSON at offset " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("cluster_id") ||
      !doc["cluster_id"].is_string())
    throw Error(ErrorKind::kParse, "offset 0: expected object with string 'cluster_id'");
  const std::string id = doc["cluster_id"].get<std::string>();
  if (!doc.contains("documents") || !doc["documents"].is_array())
    throw Error(ErrorKind::kParse, "cluster '" + id + "': 'documents' must be an array");
  if (!doc.contains("references") || !doc["references"].is_array() ||
      doc["references"].empty())
    throw Error(ErrorKind::kMissingReference,
                "cluster '" + id + "' has no reference summaries");

  std::vector<std::vector<std::string>> docs;
  std::vector<std::string> raw;
  for (std::size_t d = 0; d < doc["documents"].size(); ++d) {
    const auto& entry = doc["documents"][d];
    if (entry.is_string()) {
      raw.push_back(entry.get<std::string>());
      docs.push_back(split_sentences(raw.back()));
    } else if (entry.is_array()) {
      std::vector<std::string> sentences;
      for (const auto& s : entry) {
        if (!s.is_string())
          throw Error(ErrorKind::kParse, "cluster '" + id + "': document " +
                                             std::to_string(d) +
                                             " contains a non-string sentence");
        sentences.push_back(s.get<std::string>());
      }
      std::string joined;
      for (const auto& s : sentences) joined += (joined.empty() ? "" : " ") + s;
      raw.push_back(joined);
      docs.push_back(std::move(sentences));
    } else {
      throw Error(ErrorKind::kParse, "cluster '" + id + "': document " +
                                         std::to_string(d) +
                                         " must be a string or an array of strings");
    }
  }
  std::vector<std::string> refs;
  for (const auto& r : doc["references"]) {
    if (!r.is_string())
      throw Error(ErrorKind::kParse, "cluster '" + id + "': references must be strings");
    refs.push_back(r.get<std::string>());
  }
  return make_cluster(id, docs, std::move(refs), std::move(raw));
}

namespace detail {

inline std::vector<std::filesystem::path> sorted_txt_files(
    const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  if (!std::filesystem::is_directory(dir)) return files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt")
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace detail

// <cluster>/docs/*.txt and <cluster>/refs/*.txt, each sorted by file name.
inline DocumentCluster load_plaintext_cluster(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw Error(ErrorKind::kIo, dir.string() + " is not a directory");
  std::vector<std::vector<std::string>> docs;
  std::vector<std::string> raw;
  for (const auto& file : detail::sorted_txt_files(dir / "docs")) {
    raw.push_back(detail::read_file(file));
    docs.push_back(split_sentences(raw.back()));
  }
  std::vector<std::string> refs;
  for (const auto& file : detail::sorted_txt_files(dir / "refs"))
    refs.push_back(detail::trim(detail::read_file(file)));
  auto name = dir.filename().string();
  if (name.empty()) name = dir.parent_path().filename().string();
  return make_cluster(name, docs, std::move(refs), std::move(raw));
}

inline DocumentCluster load_cluster(const std::filesystem::path& path,
                                    ClusterFormat format) {
  if (format == ClusterFormat::kPlaintextDir) return load_plaintext_cluster(path);
  try {
    return parse_json_cluster(detail::read_file(path));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kParse)
      throw Error(ErrorKind::kParse, path.string() + ": " + e.what());
    throw;
  }
}

// Sentence-list JSON; loading it back gives an identical cluster when the
// document texts were themselves built from sentence lists.
inline nlohmann::json cluster_to_json(const DocumentCluster& cluster) {
  nlohmann::json docs = nlohmann::json::array();
  for (std::size_t d = 0; d < cluster.document_texts.size(); ++d) {
    nlohmann::json sentences = nlohmann::json::array();
    for (const auto& s : cluster.sentences)
      if (s.id.doc == static_cast<int>(d)) sentences.push_back(s.text);
    docs.push_back(std::move(sentences));
  }
  return {{"cluster_id", cluster.cluster_id},
          {"documents", std::move(docs)},
          {"references", cluster.references}};
}

// A corpus directory holds either *.json cluster files or one subdirectory
// per plaintext cluster. Result is sorted by cluster id.
inline std::vector<DocumentCluster> load_corpus(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw Error(ErrorKind::kIo, "corpus directory " + dir.string() + " not found");
  std::vector<std::filesystem::path> entries;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    entries.push_back(entry.path());
  std::sort(entries.begin(), entries.end());
  std::vector<DocumentCluster> clusters;
  for (const auto& p : entries) {
    if (std::filesystem::is_regular_file(p) && p.extension() == ".json")
      clusters.push_back(load_cluster(p, ClusterFormat::kJsonCluster));
    else if (std::filesystem::is_directory(p / "docs"))
      clusters.push_back(load_cluster(p, ClusterFormat::kPlaintextDir));
  }
  std::sort(clusters.begin(), clusters.end(),
            [](const auto& a, const auto& b) { return a.cluster_id < b.cluster_id; });
  std::set<std::string> seen;
  for (const auto& c : clusters)
    if (!seen.insert(c.cluster_id).second)
      throw Error(ErrorKind::kParse, "duplicate cluster id '" + c.cluster_id + "'");
  return clusters;
}

}  // namespace vecsum
