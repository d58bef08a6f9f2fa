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

// Acceptance suite: one test per primary criterion, all with mock scorers.
// Run directly, the binary prints one PASS/FAIL line per criterion.

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <set>

#include "crsprobe/bm25/index.h"
#include "crsprobe/bm25/tokenizer.h"
#include "crsprobe/common/rng.h"
#include "crsprobe/common/text.h"
#include "crsprobe/corpus/corpus.h"
#include "crsprobe/dialogue/dialogue.h"
#include "crsprobe/metrics/metrics.h"
#include "crsprobe/metrics/stats.h"
#include "crsprobe/metrics/sweep.h"
#include "crsprobe/probegen/probes.h"
#include "crsprobe/scoring/mock_scorer.h"
#include "crsprobe/scoring/ranking.h"
#include "testing/checks.h"
#include "testing/pipeline.h"
#include "testing/synthetic.h"

namespace crsprobe {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Synthetic corpus large enough for 10k probes of every task.
struct LargeCorpus {
  std::vector<corpus::Item> items = testing::MakeItems(12000, corpus::Domain::kMovie, 31);
  std::vector<corpus::Interaction> raw = testing::MakeInteractions(3000, 12, 12000, 31);
  corpus::ItemCatalog catalog{items};
  corpus::InteractionSet interactions = testing::ToInteractionSet(raw);
  corpus::ReviewSet reviews = testing::ToReviewSet(testing::MakeReviews(items, 1, 31));
};

const LargeCorpus& Large() {
  static const LargeCorpus* corpus = new LargeCorpus();
  return *corpus;
}

std::vector<probegen::PairProbe> SearchProbes(size_t n, size_t k, uint64_t seed) {
  probegen::SearchProbeOptions o;
  o.n = n;
  o.k = k;
  o.seed = seed;
  return probegen::BuildSearchProbes(Large().reviews, Large().catalog, o);
}

std::vector<probegen::PairProbe> RecommendationProbes(size_t n, size_t k, uint64_t seed) {
  probegen::RecommendationProbeOptions o;
  o.n = n;
  o.k = k;
  o.seed = seed;
  return probegen::BuildRecommendationProbes(Large().interactions, Large().catalog,
                                             corpus::Popularity(Large().interactions), o);
}

double MeanRecallAt1(scoring::Scorer& scorer, const std::vector<probegen::PairProbe>& probes) {
  auto outcomes = scoring::RankProbes(scorer, probes, scoring::Technique::kNsp, {256, 1});
  auto eval = metrics::EvaluatePairProbes(probes, outcomes);
  EXPECT_EQ(eval.failed, 0u);
  EXPECT_EQ(eval.recall.per_query.size(), probes.size());
  return eval.recall.mean;
}

TEST(Acceptance, RandomBaseline) {
  const auto start = Clock::now();
  scoring::UniformRandomScorer scorer(2024);
  for (auto make : {&SearchProbes, &RecommendationProbes}) {
    auto two = make(10000, 2, 1);
    auto five = make(10000, 5, 2);
    ASSERT_EQ(two.size(), 10000u);
    ASSERT_EQ(five.size(), 10000u);
    const double r2 = MeanRecallAt1(scorer, two);
    const double r5 = MeanRecallAt1(scorer, five);
    std::cout << "  R_2@1 = " << r2 << ", R_5@1 = " << r5 << "\n";
    EXPECT_NEAR(r2, 0.500, 0.015);
    EXPECT_NEAR(r5, 0.200, 0.015);
  }
  EXPECT_LT(Seconds(start), 60.0);
}

TEST(Acceptance, MetricOracleEquivalence) {
  Rng rng(77);
  const auto& vocab = scoring::MockVocabulary();
  for (int t = 0; t < 1000; ++t) {
    const size_t n = 2 + rng.Uniform(49);
    std::vector<double> scores(n);
    for (double& s : scores) s = t % 2 == 0 ? rng.UniformReal() : static_cast<double>(rng.Uniform(6));
    std::vector<int> labels(n, 0);
    const size_t relevant = rng.Uniform(n);
    labels[relevant] = 1;
    const auto ranking = scoring::RankFromScores(scores);
    ASSERT_NEAR(metrics::NdcgAtK(ranking, labels, 10), testing::OracleNdcg(scores, labels, 10), 1e-12);
    ASSERT_NEAR(metrics::Mrr(ranking, labels), testing::OracleMrr(scores, labels), 1e-12);
    ASSERT_EQ(metrics::RecallXAt1(ranking, relevant), testing::OracleRecallAt1(scores, relevant));

    // R_x@1 after truncation to x candidates.
    probegen::PairProbe probe;
    probe.probe_id = "p";
    probe.query_sentence = "q";
    for (size_t i = 0; i < n; ++i) probe.candidates.push_back("c" + std::to_string(i));
    probe.relevant_index = relevant;
    const size_t x = 1 + rng.Uniform(n);
    const auto kept = metrics::KeptCandidates(probe, x);
    std::vector<double> sub;
    size_t sub_relevant = 0;
    for (size_t i : kept) {
      if (i == relevant) sub_relevant = sub.size();
      sub.push_back(scores[i]);
    }
    std::vector<std::optional<std::vector<double>>> stored = {scores};
    const std::vector<size_t> xs = {x};
    auto swept = metrics::SweepFromScores(std::span(&probe, 1), stored, xs);
    ASSERT_EQ(swept[0].per_query[0], testing::OracleRecallAt1(sub, sub_relevant));

    // Genre R@k over a random token ranking.
    std::vector<std::string> tokens = vocab;
    rng.Shuffle(std::span(tokens));
    tokens.resize(10);
    std::vector<std::string> gold;
    for (size_t g = 0; g < 1 + rng.Uniform(3); ++g) gold.push_back(vocab[rng.Uniform(vocab.size())]);
    scoring::TokenRanking tr{tokens, std::vector<double>(10, 0.0)};
    for (size_t k : {1u, 5u}) {
      ASSERT_NEAR(metrics::GenreRecall(tr, gold, k), testing::OracleGenreRecall(tokens, gold, k), 1e-12);
    }
  }
}

TEST(Acceptance, ProbeInvariants) {
  const auto start = Clock::now();
  std::map<std::string, std::set<std::string>> rated;
  for (const auto& x : Large().raw) rated[x.user_id].insert(x.item_id);
  for (const char* task : {"search", "recommendation"}) {
    for (size_t k : {2u, 5u}) {
      auto probes = std::string(task) == "search" ? SearchProbes(10000, k, 5) : RecommendationProbes(10000, k, 5);
      ASSERT_EQ(probes.size(), 10000u) << task;
      std::vector<double> position(k, 0);
      for (const auto& p : probes) {
        ASSERT_NO_THROW(probegen::ValidatePairProbe(p));
        ASSERT_EQ(p.candidates.size(), k);
        std::set<std::string> distinct(p.candidates.begin(), p.candidates.end());
        ASSERT_EQ(distinct.size(), k) << p.probe_id;
        position[p.relevant_index] += 1;
        if (p.task == probegen::PairTask::kSearch) {
          const std::string& title = Large().catalog.Find(p.query_item_id)->title;
          // Exactly one candidate is the reviewed item's title.
          ASSERT_EQ(std::count(p.candidates.begin(), p.candidates.end(), title), 1);
          ASSERT_EQ(p.candidates[p.relevant_index], title);
          ASSERT_FALSE(ContainsIgnoreCase(p.query_sentence, title)) << p.probe_id;
        } else {
          const auto& mine = rated.at(p.user_id);
          ASSERT_TRUE(mine.count(p.query_item_id));
          size_t co_rated = 0;
          for (size_t i = 0; i < k; ++i) {
            const bool in_rated = mine.count(p.candidate_item_ids[i]) > 0;
            co_rated += in_rated;
            if (i != p.relevant_index) {
              ASSERT_FALSE(in_rated) << p.probe_id;
            }
          }
          ASSERT_EQ(co_rated, 1u);
        }
      }
      for (size_t i = 0; i < k; ++i) {
        EXPECT_NEAR(position[i] / 10000.0, 1.0 / static_cast<double>(k), 0.03) << task << " k=" << k;
      }
    }
  }
  probegen::GenreProbeOptions g;
  g.n = 10000;
  auto genre = probegen::BuildGenreProbes(Large().catalog, g);
  ASSERT_EQ(genre.size(), 10000u);
  for (const auto& p : genre) {
    ASSERT_FALSE(p.gold_genres.empty());
    const size_t first = p.prompt.find("[MASK]");
    ASSERT_NE(first, std::string::npos);
    ASSERT_EQ(p.prompt.find("[MASK]", first + 1), std::string::npos);
  }
  EXPECT_LT(Seconds(start), 60.0);
}

TEST(Acceptance, Bm25Correctness) {
  auto toy = bm25::InvertedIndex::Build({{"d1", "a b"}, {"d2", "a c"}});
  const std::vector<std::string> a = {"a"};
  EXPECT_NEAR(toy.Score(a, "d1"), std::log(1.2), 1e-9);
  EXPECT_NEAR(toy.Score(a, "d2"), std::log(1.2), 1e-9);
  auto hits = toy.Retrieve("a b", 10);
  ASSERT_EQ(hits.size(), 2u);
  EXPECT_EQ(hits[0].doc_id, "d1");
  EXPECT_NEAR(hits[0].score, std::log(1.2) + std::log(2.0), 1e-9);
  auto three = bm25::InvertedIndex::Build({{"d1", "a a b"}, {"d2", "a c c c"}, {"d3", "b"}});
  const std::vector<std::string> abc = {"a", "b", "c"};
  EXPECT_NEAR(three.Score(abc, "d1"), 1.0714452953493814, 1e-9);
  EXPECT_NEAR(three.Score(abc, "d2"), 1.782336438414199, 1e-9);
  EXPECT_NEAR(three.Score(abc, "d3"), 0.6314552576125915, 1e-9);

  // Exact ordering against score-every-document on 1k-document corpora.
  for (uint64_t seed : {1u, 2u, 3u}) {
    Rng rng(seed);
    std::vector<std::pair<std::string, std::string>> docs;
    for (size_t i = 0; i < 1000; ++i) {
      std::string text;
      for (size_t w = 0, len = rng.Uniform(15); w < len; ++w) text += "t" + std::to_string(rng.Uniform(60)) + " ";
      docs.emplace_back("doc" + std::to_string(i), text);
    }
    auto index = bm25::InvertedIndex::Build(docs);
    for (int q = 0; q < 20; ++q) {
      const std::string query = "t" + std::to_string(rng.Uniform(70)) + " t" + std::to_string(rng.Uniform(70));
      const auto tokens = bm25::Tokenize(query);
      std::vector<bm25::ScoredDoc> all;
      for (const auto& id : index.doc_ids()) {
        const double s = index.Score(tokens, id);
        if (s > 0) all.push_back({id, s});
      }
      std::sort(all.begin(), all.end(), [](const auto& l, const auto& r) {
        return l.score != r.score ? l.score > r.score : l.doc_id < r.doc_id;
      });
      auto got = index.Retrieve(query, 1000);
      ASSERT_EQ(got.size(), all.size());
      for (size_t i = 0; i < got.size(); ++i) {
        ASSERT_EQ(got[i].doc_id, all[i].doc_id);
        ASSERT_EQ(got[i].score, all[i].score);
      }
    }
  }

  auto items = testing::MakeItems(600, corpus::Domain::kMovie, 41);
  auto records = testing::MakeDialogues(items, 400, 3, 41);
  auto pool = dialogue::BuildResponsePool(records);
  const std::set<std::string> pool_set(pool.texts.begin(), pool.texts.end());
  auto examples = dialogue::BuildBm25Candidates(records, pool, {50, dialogue::CandidateMode::kBm25}, 41);
  ASSERT_EQ(examples.size(), records.size());
  for (size_t i = 0; i < examples.size(); ++i) {
    const auto& ex = examples[i];
    ASSERT_EQ(ex.candidates.size(), 50u);
    ASSERT_EQ(std::accumulate(ex.labels.begin(), ex.labels.end(), 0), 1);
    ASSERT_EQ(std::count(ex.candidates.begin(), ex.candidates.end(), records[i].response), 1);
    ASSERT_EQ(ex.candidates[dialogue::RelevantIndex(ex)], records[i].response);
    for (const auto& c : ex.candidates) ASSERT_TRUE(pool_set.count(c));
  }
}

TEST(Acceptance, AdversarialIntegrity) {
  auto items = testing::MakeItems(3000, corpus::Domain::kMovie, 51);
  corpus::ItemCatalog catalog(items);
  auto records = testing::MakeDialogues(items, 450, 3, 51);
  dialogue::CandidateStats stats;
  auto examples = dialogue::BuildAdversarialCandidates(
      records, catalog, {50, dialogue::CandidateMode::kAdversarial}, 51, &stats);
  ASSERT_GE(examples.size(), 1000u);
  examples.resize(1000);
  std::map<std::string, const dialogue::DialogueRecord*> by_id;
  for (const auto& r : records) by_id["ex-" + std::to_string(r.record_index)] = &r;
  size_t violations = 0;
  for (const auto& ex : examples) {
    for (const auto& v : testing::AdversarialViolations(ex, *by_id.at(ex.example_id), catalog, 50)) {
      if (++violations <= 5) ADD_FAILURE() << v;
    }
  }
  EXPECT_EQ(violations, 0u);
}

TEST(Acceptance, EndToEndDeterminism) {
  testing::TempDir a, b;
  testing::FixtureOptions o;
  o.n = 500;
  ASSERT_EQ(testing::RunPipeline(testing::WriteFixture(a.path(), o)), "");
  ASSERT_EQ(testing::RunPipeline(testing::WriteFixture(b.path(), o)), "");
  const auto ta = testing::ReadTree(a / "runs");
  const auto tb = testing::ReadTree(b / "runs");
  size_t probes = 0, candidates = 0, reports = 0;
  for (const auto& [name, bytes] : ta) {
    probes += name.find("probes.") != std::string::npos;
    candidates += name.find(".bm25.") != std::string::npos || name.find(".adversarial.") != std::string::npos;
    reports += name.find("report.csv") != std::string::npos;
    auto it = tb.find(name);
    ASSERT_NE(it, tb.end()) << name;
    EXPECT_TRUE(it->second == bytes) << name << " differs";
  }
  EXPECT_EQ(ta.size(), tb.size());
  EXPECT_GE(probes, 3u);
  EXPECT_GE(candidates, 6u);
  EXPECT_GE(reports, 1u);
}

TEST(Acceptance, Statistics) {
  std::ifstream in(std::string(CRSPROBE_TEST_DATA) + "/ttest_oracle.json");
  const auto doc = nlohmann::json::parse(in);
  size_t random_cases = 0;
  for (const auto& c : doc["cases"]) {
    const auto a = c["a"].get<std::vector<double>>();
    const auto b = c["b"].get<std::vector<double>>();
    const auto r = metrics::PairedTTest(a, b);
    EXPECT_NEAR(r.t, c["t"].get<double>(), 1e-9);
    EXPECT_NEAR(r.p, c["p"].get<double>(), 1e-9);
    random_cases += a.size() != 5;
  }
  EXPECT_GE(random_cases, 20u);

  auto C = [](double p) { return metrics::Comparison{"a", "b", 0.0, p, false}; };
  EXPECT_TRUE(metrics::Bonferroni({C(0.04)}, 0.05).comparisons[0].significant);
  auto five = metrics::Bonferroni({C(0.02), C(0.5), C(0.5), C(0.5), C(0.5)}, 0.05);
  EXPECT_FALSE(five.comparisons[0].significant);
  auto edge = metrics::Bonferroni({C(0.025), C(0.7)}, 0.05);
  EXPECT_FALSE(edge.comparisons[0].significant);
  Rng rng(3);
  for (int t = 0; t < 1000; ++t) {
    std::vector<metrics::Comparison> cs;
    for (size_t i = 0, m = 1 + rng.Uniform(10); i < m; ++i) cs.push_back(C(rng.UniformReal() * 0.05));
    const double alpha = 0.01 + 0.1 * rng.UniformReal();
    auto r = metrics::Bonferroni(cs, alpha);
    for (const auto& c : r.comparisons) {
      ASSERT_EQ(c.significant, c.p_value < alpha / static_cast<double>(cs.size()));
    }
  }
}

const std::map<std::string, std::string>& CriterionNames() {
  static const std::map<std::string, std::string> names = {
      {"RandomBaseline", "Random-baseline reproduction (R_2@1, R_5@1 over 10k probes)"},
      {"MetricOracleEquivalence", "Metric oracle equivalence (1000 rankings, 1e-12)"},
      {"ProbeInvariants", "Probe invariants (10k probes per task)"},
      {"Bm25Correctness", "BM25 correctness and 50-candidate examples"},
      {"AdversarialIntegrity", "Adversarial integrity (1000 examples)"},
      {"EndToEndDeterminism", "End-to-end determinism (byte-identical artifacts)"},
      {"Statistics", "Paired t-test oracle and Bonferroni threshold"},
  };
  return names;
}

class CriterionPrinter : public ::testing::EmptyTestEventListener {
 public:
  void OnTestEnd(const ::testing::TestInfo& info) override {
    const auto it = CriterionNames().find(info.name());
    const std::string label = it == CriterionNames().end() ? info.name() : it->second;
    const bool ok = info.result()->Passed();
    std::cout << (ok ? "PASS" : "FAIL") << "  " << label << "  ("
              << info.result()->elapsed_time() << " ms)" << std::endl;
  }
};

}  // namespace
}  // namespace crsprobe

int main(int argc, char** argv) {
  ::testing::InitGoogleTest(&argc, argv);
  ::testing::UnitTest::GetInstance()->listeners().Append(new crsprobe::CriterionPrinter);
  return RUN_ALL_TESTS();
}
