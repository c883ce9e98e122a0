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

// vecsum command line: run the experiment matrix, score a summary, run a
// single analysis or check a config.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vecsum/experiment.hpp"
#include "vecsum/rouge.hpp"

namespace fs = std::filesystem;

namespace {

vecsum::ExperimentConfig load(const std::string& path, const std::optional<std::string>& output,
                              std::optional<unsigned> threads) {
  auto cfg = vecsum::validate_config(path);
  if (output) cfg.output_dir = *output;
  if (threads) cfg.threads = *threads;
  return cfg;
}

std::vector<std::string> read_references(const fs::path& refs) {
  std::vector<std::string> out;
  if (fs::is_directory(refs)) {
    for (const auto& f : vecsum::detail::sorted_txt_files(refs)) out.push_back(vecsum::detail::read_file(f));
  } else {
    out.push_back(vecsum::detail::read_file(refs));
  }
  if (out.empty()) throw vecsum::Error(vecsum::ErrorKind::kMissingReference, "no references in " + refs.string());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extractive summarization by sentence-vector selection"};
  app.require_subcommand(1);
  app.set_version_flag("--version", vecsum::kVersion);

  std::string config;
  std::optional<std::string> output;
  std::optional<unsigned> threads;

  auto* run = app.add_subcommand("run", "Run the full experiment matrix");
  run->add_option("--config", config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--output", output, "Override output_dir");
  run->add_option("--threads", threads, "Worker threads (0 = all cores)");

  std::string candidate;
  std::string refs;
  std::size_t limit = vecsum::kDefaultWordLimit;
  auto* score = app.add_subcommand("score", "ROUGE-1/2 recall of one summary");
  score->add_option("--candidate", candidate, "Summary text file")->required()->check(CLI::ExistingFile);
  score->add_option("--refs", refs, "Reference file or directory of .txt references")
      ->required()
      ->check(CLI::ExistingPath);
  score->add_option("--limit", limit, "Word limit")->capture_default_str();

  std::string analysis;
  auto* analyze = app.add_subcommand("analyze", "Run one analysis");
  analyze->add_option("name", analysis, "fig1 | fig2 | fig3 | fig4 | fig5 | regression | table2")->required();
  analyze->add_option("--config", config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  analyze->add_option("--output", output, "Override output_dir");
  analyze->add_option("--threads", threads, "Worker threads (0 = all cores)");

  auto* validate = app.add_subcommand("validate", "Check a config without running it");
  validate->add_option("--config", config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version exit 0; every usage error exits 2.
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*run) {
      const auto cfg = load(config, output, threads);
      const auto table = vecsum::run_matrix(cfg);
      std::printf("%-22s %-18s %8s %8s %10s\n", "selector", "vector_function", "R-1", "R-2", "p");
      for (const auto& r : table.rows)
        std::printf("%-22s %-18s %8s %8s %10s\n", r.selector.c_str(), r.vector_function.c_str(),
                    vecsum::detail::fmt(r.rouge1, 2).c_str(), vecsum::detail::fmt(r.rouge2, 2).c_str(),
                    vecsum::detail::fmt(r.p_vs_random, 4).c_str());
      std::printf("wrote %s\n", cfg.output_dir.string().c_str());
    } else if (*score) {
      const auto text = vecsum::detail::read_file(candidate);
      const auto s = vecsum::score_summary(text, read_references(refs), limit);
      std::printf("rouge1 %.6f\nrouge2 %.6f\nreferences %d\n", s.rouge1, s.rouge2, s.refs_used);
    } else if (*analyze) {
      const auto cfg = load(config, output, threads);
      vecsum::run_analysis(cfg, analysis);
      std::printf("wrote %s\n", cfg.output_dir.string().c_str());
    } else if (*validate) {
      const auto cfg = vecsum::validate_config(config);
      std::printf("config ok: %zu vector functions, %zu selectors\n", cfg.vector_functions.size(),
                  cfg.selectors.size());
    }
  } catch (const vecsum::Error& e) {
    std::cerr << "vecsum: " << e.what() << '\n';
    return e.kind() == vecsum::ErrorKind::kConfig ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "vecsum: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
