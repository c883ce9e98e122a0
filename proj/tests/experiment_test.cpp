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

#include <fstream>
#include <sstream>

#include "support.hpp"
#include "vecsum/experiment.hpp"

namespace vecsum {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ErrorKind kind_of(const std::function<void()>& f, std::string* message = nullptr) {
  try {
    f();
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kIo;
}

fs::path demo_dir() { return testing::source_dir() / "data" / "demo"; }

// Demo config redirected into a temp directory.
ExperimentConfig demo_config(const fs::path& out, nlohmann::json overrides = {}) {
  auto raw = nlohmann::json::parse(slurp(demo_dir() / "config.json"));
  raw["output_dir"] = out.string();
  for (auto& [k, v] : overrides.items()) raw[k] = v;
  return parse_config(raw, demo_dir());
}

TEST(Config, SuggestsNearestName) {
  std::string msg;
  const auto kind = kind_of(
      [] {
        parse_config(nlohmann::json{{"corpus_dir", "c"}, {"word_vectors", "v"}, {"selectors", {"greedyy"}}},
                     ".");
      },
      &msg);
  EXPECT_EQ(kind, ErrorKind::kConfig);
  EXPECT_NE(msg.find("did you mean 'greedy'"), std::string::npos) << msg;
}

TEST(Config, UnknownKeyAndMissingVectors) {
  EXPECT_EQ(kind_of([] { parse_config(nlohmann::json{{"corpus_dir", "c"}, {"budjet", 100}}, "."); }),
            ErrorKind::kConfig);
  EXPECT_EQ(kind_of([] { parse_config(nlohmann::json{{"corpus_dir", "c"}}, "."); }), ErrorKind::kConfig);
  EXPECT_EQ(kind_of([] {
              parse_config(nlohmann::json{{"corpus_dir", "c"}, {"word_vectors", "v"},
                                          {"vector_functions", {"skip-thought"}}},
                           ".");
            }),
            ErrorKind::kConfig);
}

TEST(Config, PathsResolveAgainstConfigDir) {
  const auto cfg = validate_config(demo_dir() / "config.json");
  EXPECT_EQ(cfg.corpus_dir, demo_dir() / "corpus");
  EXPECT_EQ(cfg.docvec_strategy, DocvecMode::kBoth);
  EXPECT_EQ(cfg.strategies().size(), 2u);
  EXPECT_FALSE(cfg.echo.contains("output_dir"));
}

TEST(Config, SplitIsStableAndMixed) {
  int validation = 0;
  for (int i = 0; i < 200; ++i) {
    const std::string id = "c" + std::to_string(i);
    EXPECT_EQ(is_validation_cluster(id), is_validation_cluster(id));
    validation += is_validation_cluster(id);
  }
  EXPECT_GT(validation, 60);
  EXPECT_LT(validation, 140);
  EXPECT_NE(detail::mix_seed(0, "a"), detail::mix_seed(0, "b"));
  EXPECT_NE(detail::mix_seed(0, "a"), detail::mix_seed(1, "a"));
}

TEST(Format, NumbersAndCsvQuoting) {
  EXPECT_EQ(detail::fmt(std::nan("")), "NA");
  EXPECT_EQ(detail::fmt(-0.0), "0.000000");
  EXPECT_EQ(detail::fmt(-1e-9, 3), "0.000");
  EXPECT_EQ(detail::csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(detail::csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(detail::csv_field("plain"), "plain");
}

TEST(Experiment, DemoRunWritesEveryArtifact) {
  testing::TempDir tmp("exp");
  const auto table = run_matrix(demo_config(tmp.path()));
  for (const char* f : {"table1.csv", "table2.csv", "per_cluster.csv", "per_cluster_docvec-avg.csv",
                        "summaries.csv", "run.json", "analysis.json", "scores.json", "errors.csv", "fig1_summary.csv", "fig1_cosines.csv",
                        "fig2_optimal.csv", "fig3_rouge_cosine.csv", "regression.csv",
                        "fig4_greedy_trace.csv", "fig5_denominator.csv"})
    EXPECT_TRUE(fs::exists(tmp.path() / f)) << f;
  ASSERT_FALSE(table.rows.empty());
  for (const auto& r : table.rows) {
    EXPECT_EQ(r.clusters, 3) << r.selector << "/" << r.vector_function;
    EXPECT_EQ(r.failed, 0) << r.selector << "/" << r.vector_function;
    EXPECT_GE(r.rouge1, 0.0);
    EXPECT_LE(r.rouge1, 100.0);
    EXPECT_LE(r.rouge2, r.rouge1 + 1e-9);
  }
  const auto run = nlohmann::json::parse(slurp(tmp.path() / "run.json"));
  EXPECT_TRUE(run.contains("config"));

  // Deterministic: a second run produces the same table.
  testing::TempDir again("exp2");
  run_matrix(demo_config(again.path()));
  EXPECT_EQ(slurp(tmp.path() / "table1.csv"), slurp(again.path() / "table1.csv"));
  EXPECT_EQ(slurp(tmp.path() / "summaries.csv"), slurp(again.path() / "summaries.csv"));
}

TEST(Experiment, TableRowsMatchPerClusterMeans) {
  testing::TempDir tmp("exp-mean");
  const auto table = run_matrix(demo_config(tmp.path(), {{"docvec_strategy", "simple"}}));
  std::ifstream in(tmp.path() / "per_cluster.csv");
  std::string line;
  std::getline(in, line);
  std::map<std::pair<std::string, std::string>, std::pair<double, int>> sums;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string x; std::getline(ss, x, ',');) f.push_back(x);
    ASSERT_EQ(f.size(), 5u) << line;
    if (f[3] == "NA") continue;
    auto& [s, n] = sums[{f[1], f[2]}];
    s += std::stod(f[3]);
    ++n;
  }
  for (const auto& r : table.rows) {
    auto it = sums.find({r.selector, r.vector_function});
    ASSERT_NE(it, sums.end()) << r.selector;
    EXPECT_NEAR(r.rouge1, 100.0 * it->second.first / it->second.second, 1e-3) << r.selector;
  }
}

TEST(Experiment, SingleAnalysisWritesOnlyItsFiles) {
  testing::TempDir tmp("ana");
  const auto cfg = demo_config(tmp.path());
  run_analysis(cfg, "fig5");
  EXPECT_TRUE(fs::exists(tmp.path() / "fig5_denominator.csv"));
  EXPECT_FALSE(fs::exists(tmp.path() / "table1.csv"));
  run_analysis(cfg, "fig1");
  EXPECT_TRUE(fs::exists(tmp.path() / "fig1_cosines.csv"));
  EXPECT_EQ(kind_of([&] { run_analysis(cfg, "fig9"); }), ErrorKind::kConfig);
  const auto simple = demo_config(tmp.path(), {{"docvec_strategy", "simple"}});
  EXPECT_EQ(kind_of([&] { run_analysis(simple, "table2"); }), ErrorKind::kConfig);
}

TEST(Cli, ExitCodes) {
  const std::string cli = VECSUM_CLI_PATH;
  testing::TempDir tmp("cli");
  const auto bad = tmp.write("bad.json", R"({"corpus_dir": "c", "word_vectors": "v", "selectors": ["greedyy"]})");
  auto code = [](const std::string& cmd) {
    const int rc = std::system((cmd + " > /dev/null 2>&1").c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  };
  EXPECT_EQ(code(cli + " validate --config " + bad.string()), 2);
  EXPECT_EQ(code(cli + " validate --config " + (demo_dir() / "config.json").string()), 0);
  EXPECT_EQ(code(cli + " --version"), 0);
  const auto cand = tmp.write("cand.txt", "the river flooded the town");
  const auto ref = tmp.write("ref.txt", "the river flooded");
  EXPECT_EQ(code(cli + " score --candidate " + cand.string() + " --refs " + ref.string()), 0);
  EXPECT_EQ(code(cli + " score --candidate " + cand.string() + " --refs " + (tmp.path() / "nope").string()), 2);
  EXPECT_EQ(code(cli + " run"), 2);
}

}  // namespace
}  // namespace vecsum
