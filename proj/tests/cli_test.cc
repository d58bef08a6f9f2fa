// Copyright 2026 The crsprobe Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "crsprobe/cli/config.h"
#include "crsprobe/common/error.h"
#include "testing/pipeline.h"
#include "testing/synthetic.h"

namespace crsprobe::cli {
namespace {

using nlohmann::json;
using ::testing::HasSubstr;
using testing::CliResult;
using testing::RunCli;

json ShowConfig(const std::filesystem::path& config, std::vector<std::string> extra = {}) {
  std::vector<std::string> args = {"-c", config.string()};
  args.insert(args.end(), extra.begin(), extra.end());
  args.push_back("show-config");
  CliResult r = RunCli(args);
  EXPECT_EQ(r.code, 0) << r.err;
  return json::parse(r.out);
}

json ErrorRecord(const CliResult& r) {
  json doc = json::parse(r.err);
  EXPECT_TRUE(doc.contains("error"));
  EXPECT_EQ(doc["error"]["exit_code"], r.code);
  return doc["error"];
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    testing::FixtureOptions o;
    o.n = 60;
    o.items = 120;
    o.users = 80;
    o.dialogues = 80;
    config_ = testing::WriteFixture(dir_.path(), o);
  }
  std::vector<std::string> Args(std::vector<std::string> tail) const {
    std::vector<std::string> args = {"-c", config_.string(), "-q"};
    args.insert(args.end(), tail.begin(), tail.end());
    return args;
  }
  std::filesystem::path RunDirPath() { return ShowConfig(config_)["run_dir"].get<std::string>(); }

  testing::TempDir dir_;
  std::filesystem::path config_;
};

TEST_F(CliTest, ShowConfigHashIgnoresStageSettings) {
  json base = ShowConfig(config_);
  EXPECT_EQ(base["config"]["seed"], 7);
  const std::string hash = base["config_hash"];
  EXPECT_EQ(hash.size(), 16u);
  EXPECT_THAT(base["run_dir"].get<std::string>(), HasSubstr(hash));
  EXPECT_EQ(ShowConfig(config_, {"--task", "genre", "--scorer", "mock:hash"})["config_hash"], hash);
  EXPECT_NE(ShowConfig(config_, {"--seed", "8"})["config_hash"], hash);
  EXPECT_NE(ShowConfig(config_, {"--k", "5"})["config_hash"], hash);
}

TEST_F(CliTest, HelpExitsZero) {
  CliResult r = RunCli({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_THAT(r.out, HasSubstr("gen-candidates"));
}

TEST_F(CliTest, ConfigErrorsExitTwo) {
  testing::WriteText(dir_ / "bad.json", R"({"seed": 1, "probes": {"n": 5, "typo": 1}})");
  CliResult unknown = RunCli({"-c", (dir_ / "bad.json").string(), "show-config"});
  EXPECT_EQ(unknown.code, 2);
  EXPECT_EQ(ErrorRecord(unknown)["kind"], "config");
  EXPECT_THAT(unknown.err, HasSubstr("typo"));

  EXPECT_EQ(RunCli(Args({"gen-probes", "--task", "nonsense"})).code, 2);
  EXPECT_EQ(RunCli(Args({"frobnicate"})).code, 2);
  EXPECT_EQ(RunCli(Args({"probe", "--scorer", "gpu"})).code, 2);
  EXPECT_EQ(RunCli(Args({"show-config", "--alpha", "1.5"})).code, 2);
}

TEST_F(CliTest, MissingInputExitsThree) {
  testing::WriteText(dir_ / "missing.json",
                     R"({"inputs": {"catalog": "nope.jsonl"}, "output_dir": "runs"})");
  CliResult r = RunCli({"-c", (dir_ / "missing.json").string(), "-q", "ingest"});
  EXPECT_EQ(r.code, 3);
  json e = ErrorRecord(r);
  EXPECT_EQ(e["kind"], "data");
  EXPECT_EQ(e["stage"], "ingest");
}

TEST_F(CliTest, StageWithoutUpstreamArtifactExitsThree) {
  CliResult r = RunCli(Args({"gen-probes"}));
  EXPECT_EQ(r.code, 3) << r.err;
}

TEST_F(CliTest, UnreachableScorerExitsFour) {
  ASSERT_EQ(RunCli(Args({"ingest"})).code, 0);
  ASSERT_EQ(RunCli(Args({"gen-probes", "--task", "search"})).code, 0);
  ::unsetenv("CRSPROBE_SCORER_ENDPOINT");
  CliResult r = RunCli(Args({"probe", "--task", "search", "--scorer", "http://127.0.0.1:1"}));
  EXPECT_EQ(r.code, 4) << r.err;
  EXPECT_EQ(ErrorRecord(r)["kind"], "transport");
}

TEST_F(CliTest, RerunIsNoOpButConflictingRewriteIsRefused) {
  ASSERT_EQ(RunCli(Args({"ingest"})).code, 0);
  ASSERT_EQ(RunCli(Args({"gen-probes", "--task", "search"})).code, 0);
  ASSERT_EQ(RunCli(Args({"probe", "--task", "search"})).code, 0);
  EXPECT_EQ(RunCli(Args({"probe", "--task", "search"})).code, 0);
  CliResult clash = RunCli(Args({"probe", "--task", "search", "--scorer", "mock:uniform:99"}));
  EXPECT_EQ(clash.code, 2) << clash.err;
  EXPECT_EQ(RunCli(Args({"probe", "--task", "search", "--scorer", "mock:uniform:99",
                         "--overwrite"}))
                .code,
            0);
}

TEST_F(CliTest, ForeignRunDirRequiresForce) {
  const auto run = dir_ / "shared";
  ASSERT_EQ(RunCli(Args({"--run-dir", run.string(), "ingest"})).code, 0);
  CliResult refused = RunCli(Args({"--run-dir", run.string(), "--seed", "8", "gen-probes"}));
  EXPECT_EQ(refused.code, 2) << refused.err;
  EXPECT_THAT(refused.err, HasSubstr("hash"));
  CliResult forced =
      RunCli(Args({"--run-dir", run.string(), "--seed", "8", "--force", "gen-probes"}));
  EXPECT_EQ(forced.code, 0) << forced.err;
}

TEST_F(CliTest, TamperedArtifactIsDataError) {
  ASSERT_EQ(RunCli(Args({"ingest"})).code, 0);
  testing::WriteText(RunDirPath() / "reviews.jsonl", "{}\n");
  CliResult r = RunCli(Args({"gen-probes", "--task", "search"}));
  EXPECT_EQ(r.code, 3) << r.err;
}

TEST_F(CliTest, ArtifactsCarryProvenance) {
  ASSERT_EQ(testing::RunPipeline(config_), "");
  const auto run = RunDirPath();
  const std::string hash = ShowConfig(config_)["config_hash"];
  for (const char* name : {"probes.search.jsonl", "toy.bm25.test.jsonl", "report.csv",
                           "per_query.jsonl", "significance.json", "bm25.index"}) {
    json meta = json::parse(testing::ReadTree(run).at(std::string(name) + ".meta.json"));
    EXPECT_EQ(meta["config_hash"], hash) << name;
    EXPECT_EQ(meta["seed"], 7) << name;
    EXPECT_TRUE(meta.contains("stage")) << name;
  }
  const auto files = testing::ReadTree(run);
  const std::string& report = files.at("report.csv");
  EXPECT_THAT(report, HasSubstr("all-search,NSP,R_x@1,10,"));
  EXPECT_THAT(report, HasSubstr("all-search,SIM_CLS,R_x@1,2,"));
  EXPECT_THAT(report, HasSubstr("toy.bm25.test,RANK,nDCG@10,10,"));
  EXPECT_THAT(report, HasSubstr("all-genre,MLM,R@5,5,"));
  EXPECT_TRUE(files.count("plot.all-search.NSP.tsv"));
  json sig = json::parse(files.at("significance.json"));
  EXPECT_FALSE(sig.empty());
}

TEST_F(CliTest, OracleScorerIsPerfectOnResponses) {
  ASSERT_EQ(RunCli(Args({"ingest"})).code, 0);
  ASSERT_EQ(RunCli(Args({"gen-candidates"})).code, 0);
  ASSERT_EQ(RunCli(Args({"probe", "--task", "response", "--scorer", "mock:oracle"})).code, 0);
  ASSERT_EQ(RunCli(Args({"eval"})).code, 0);
  const std::string report = testing::ReadTree(RunDirPath()).at("report.csv");
  EXPECT_THAT(report, HasSubstr("toy.bm25.test,RANK,nDCG@10,10,1.000000,0.000000,"));
  EXPECT_THAT(report, HasSubstr("toy.bm25.test,RANK,MRR,,1.000000,0.000000,"));
}

TEST(CliDeterminismTest, IdenticalConfigsGiveIdenticalTrees) {
  testing::TempDir a, b;
  testing::FixtureOptions o;
  o.n = 80;
  o.items = 150;
  o.users = 100;
  o.dialogues = 90;
  ASSERT_EQ(testing::RunPipeline(testing::WriteFixture(a.path(), o)), "");
  ASSERT_EQ(testing::RunPipeline(testing::WriteFixture(b.path(), o)), "");
  auto ta = testing::ReadTree(a / "runs");
  auto tb = testing::ReadTree(b / "runs");
  ASSERT_GT(ta.size(), 40u);
  EXPECT_EQ(ta.size(), tb.size());
  for (const auto& [name, bytes] : ta) {
    auto it = tb.find(name);
    ASSERT_NE(it, tb.end()) << name;
    EXPECT_TRUE(it->second == bytes) << name << " differs";
  }
}

}  // namespace
}  // namespace crsprobe::cli
