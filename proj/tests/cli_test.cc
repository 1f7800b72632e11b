// Copyright 2026 The rankagg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Runs the built binary end to end.

#include <sys/wait.h>

#include <cstdlib>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#ifndef RANKAGG_CLI_PATH
#error "RANKAGG_CLI_PATH must name the rankagg binary"
#endif

namespace {

namespace fs = std::filesystem;

int RunCli(const std::string& args) {
  const std::string cmd =
      std::string(RANKAGG_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("rankagg_cli_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string P(const std::string& name) const { return (dir_ / name).string(); }

  void WriteConfig(const std::string& name, const std::string& body) {
    std::ofstream(dir_ / name) << body;
  }

  void MakePairs(const std::string& out, int seed = 3) {
    WriteConfig("pairs.json",
                R"({"m": 5, "d": 3, "num_queries": 4, "n_pairs": 400})");
    ASSERT_EQ(RunCli("gen-data --config " + P("pairs.json") + " --seed " +
                  std::to_string(seed) + " --out " + P(out)),
              0);
  }

  fs::path dir_;
};

TEST_F(CliTest, NoSubcommandIsUsageError) { EXPECT_EQ(RunCli(""), 2); }

TEST_F(CliTest, GenDataIsDeterministic) {
  MakePairs("a");
  MakePairs("b");
  MakePairs("c", 4);
  for (const char* f : {"data.letor", "judgments.json", "generator.json"}) {
    ASSERT_TRUE(fs::exists(dir_ / "a" / f)) << f;
    EXPECT_EQ(Slurp(dir_ / "a" / f), Slurp(dir_ / "b" / f)) << f;
  }
  EXPECT_NE(Slurp(dir_ / "a" / "judgments.json"),
            Slurp(dir_ / "c" / "judgments.json"));
}

TEST_F(CliTest, GenDataRejectsBadConfig) {
  WriteConfig("bad.json", R"({"m": 5, "d": 3, "num_queries": 4})");
  EXPECT_EQ(RunCli("gen-data --config " + P("bad.json") + " --out " + P("x")), 2);
  EXPECT_EQ(RunCli("gen-data --config " + P("missing.json") + " --out " + P("x")),
            2);
}

TEST_F(CliTest, TrainWritesModelAndTrace) {
  MakePairs("data");
  const std::string base = "train --dataset " + P("data") +
                           " --surrogate reg --k 2 --iters 500 --seed 1 --out ";
  ASSERT_EQ(RunCli(base + P("m1")), 0);
  ASSERT_EQ(RunCli(base + P("m2")), 0);
  EXPECT_EQ(Slurp(dir_ / "m1" / "model.json"), Slurp(dir_ / "m2" / "model.json"));

  const auto model = nlohmann::json::parse(Slurp(dir_ / "m1" / "model.json"));
  EXPECT_EQ(model["k"], 2);
  EXPECT_EQ(model["surrogate"], "reg");
  EXPECT_EQ(model["theta_avg"].size(), 3u);
  EXPECT_TRUE(model.contains("ndcg_risk"));

  std::ifstream trace(dir_ / "m1" / "trace.csv");
  std::string header;
  std::getline(trace, header);
  EXPECT_EQ(header, "schema_version,iteration,moving_avg_loss");
  int rows = 0;
  for (std::string line; std::getline(trace, line);) ++rows;
  EXPECT_EQ(rows, 5);
}

TEST_F(CliTest, TrainErrors) {
  MakePairs("data");
  const std::string base = "train --dataset " + P("data") + " --iters 10 --out " +
                           P("m") + " ";
  EXPECT_EQ(RunCli(base + "--surrogate bogus"), 2);
  EXPECT_EQ(RunCli(base + "--surrogate logistic --k 3"), 2);
  EXPECT_EQ(RunCli(base + "--surrogate reg --lambda -1"), 2);
  EXPECT_EQ(RunCli(base + "--surrogate reg --structure cascade-mle"), 2);
  EXPECT_EQ(RunCli(base + "--surrogate margin-hinge --k 1"), 2);  // needs adjacency
  EXPECT_EQ(RunCli(base + "--surrogate zhang-hinge --k 3"), 0);
}

TEST_F(CliTest, AdjacencyJudgments) {
  MakePairs("data");
  // Swap the sidecar for one adjacency matrix per query: y(0, 1) = 1.
  auto doc = nlohmann::json::parse(Slurp(dir_ / "data" / "judgments.json"));
  for (auto& q : doc["queries"]) {
    const int m = q["m"];
    std::vector<std::vector<double>> y(m, std::vector<double>(m, 0.0));
    y[0][1] = 1.0;
    q.erase("pairs");
    q["adjacency"] = {y, y};
  }
  std::ofstream(dir_ / "data" / "judgments.json") << doc.dump();
  const std::string base = "train --dataset " + P("data") +
                           " --iters 50 --k 2 --out " + P("m") + " ";
  for (const char* s : {"pairwise-logistic", "margin-hinge", "difference-exponential"}) {
    EXPECT_EQ(RunCli(base + "--step-scale 0.1 --surrogate " + s), 0) << s;
  }
  EXPECT_EQ(RunCli(base + "--surrogate reg"), 2);
  // Separable and unregularized enough that large exponential steps overflow.
  EXPECT_EQ(RunCli(base + "--surrogate difference-exponential --step-scale 1"), 3);
  ASSERT_EQ(RunCli("aggregate --judgments " + P("data/judgments.json") +
                   " --method average --out " + P("agg.json")),
            0);
  const auto agg = nlohmann::json::parse(Slurp(dir_ / "agg.json"));
  EXPECT_TRUE(agg.dump().find("adjacency") != std::string::npos);
}

TEST_F(CliTest, SweepKCsv) {
  MakePairs("data");
  ASSERT_EQ(RunCli("sweep-k --dataset " + P("data") +
                " --ks 1 2 --ns 100 --reps 2 --iters 200 --out " + P("s.csv")),
            0);
  std::ifstream csv(dir_ / "s.csv");
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header,
            "schema_version,n,k,seed,ndcg_risk_reg,ndcg_risk_log,ndcg_risk_full");
  int rows = 0;
  for (std::string line; std::getline(csv, line);) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 6);
  }
  EXPECT_EQ(rows, 4);
}

TEST_F(CliTest, Aggregate) {
  MakePairs("data");
  const std::string j = P("data/judgments.json");
  for (const char* method : {"btl", "thurstone", "borda", "ammar-shah",
                             "eigenvector", "log-odds"}) {
    ASSERT_EQ(RunCli(std::string("aggregate --judgments ") + j + " --method " +
                  method + " --out " + P("agg.json")),
              0)
        << method;
    const auto doc = nlohmann::json::parse(Slurp(dir_ / "agg.json"));
    EXPECT_FALSE(doc.empty()) << method;
  }
  EXPECT_EQ(RunCli("aggregate --judgments " + j +
                " --method cascade-mle --out " + P("agg.json")),
            2);
  EXPECT_EQ(RunCli("aggregate --judgments " + j +
                   " --method average --out " + P("agg.json")),
            2);
  EXPECT_EQ(RunCli("aggregate --judgments " + j + " --method nope --out " +
                P("agg.json")),
            2);
}

TEST_F(CliTest, DemoInconsistency) {
  ASSERT_EQ(RunCli("demo-inconsistency --phi hinge --seed 1 --out " + P("d.json")),
            0);
  const auto doc = nlohmann::json::parse(Slurp(dir_ / "d.json"));
  EXPECT_EQ(doc["status"], "found");
  EXPECT_EQ(doc["report"]["verdicts"]["verdict"], "INCONSISTENT WITNESS");
  EXPECT_GE(doc["report"]["witnesses"][0]["target_gap"].get<double>(), 0.05);

  ASSERT_EQ(RunCli("demo-inconsistency --phi logistic --difference --seed 1 --out " +
                P("e.json")),
            0);
  const auto diff = nlohmann::json::parse(Slurp(dir_ / "e.json"));
  EXPECT_EQ(diff["report"]["verdicts"]["verdict"], "CONSISTENT ON INSTANCE");

  EXPECT_EQ(RunCli("demo-inconsistency --phi hinge --max-candidates 1 --out " +
                P("f.json")),
            3);
  EXPECT_EQ(nlohmann::json::parse(Slurp(dir_ / "f.json"))["status"], "exhausted");
  EXPECT_EQ(RunCli("demo-inconsistency --phi cubic --out " + P("g.json")), 2);
}

}  // namespace
