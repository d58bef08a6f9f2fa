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

#include <map>
#include <set>

#include "crsprobe/common/error.h"
#include "crsprobe/common/text.h"
#include "crsprobe/dialogue/dialogue.h"
#include "testing/checks.h"
#include "testing/synthetic.h"

namespace crsprobe::dialogue {
namespace {

using corpus::Domain;
using corpus::Item;
using ::testing::ElementsAre;
using ::testing::HasSubstr;

ErrorKind KindOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kData;
}

TEST(LoadDialoguesTest, RedditStyleSingleTurn) {
  testing::TempDir dir;
  testing::WriteText(dir / "d.jsonl",
                     R"({"dialogue_id":"r1","context":["any good sci-fi books?"],"response":"Try Dune."})"
                     "\n");
  LoadStats stats;
  auto records = LoadDialogues(dir / "d.jsonl", &stats);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].context.size(), 1u);
  EXPECT_EQ(records[0].response, "Try Dune.");
  EXPECT_TRUE(records[0].mentions.empty());
}

TEST(LoadDialoguesTest, MentionsRetainedAndOrderPreserved) {
  testing::TempDir dir;
  testing::WriteText(
      dir / "d.jsonl",
      R"({"context":["hi","any movie like Heat?","sure"],"response":"Alien or Aliens","mentions":[{"start":0,"end":5,"item_id":"a1"},{"start":9,"end":15,"item_id":"a2"}]})"
      "\n");
  auto records = LoadDialogues(dir / "d.jsonl");
  ASSERT_EQ(records.size(), 1u);
  EXPECT_THAT(records[0].context, ElementsAre("hi", "any movie like Heat?", "sure"));
  ASSERT_EQ(records[0].mentions.size(), 2u);
  EXPECT_EQ(records[0].mentions[1].start, 9u);
  EXPECT_EQ(records[0].mentions[1].item_id, "a2");
  EXPECT_EQ(records[0].dialogue_id, "d1");
}

TEST(LoadDialoguesTest, BadLinesSkippedAndCounted) {
  testing::TempDir dir;
  testing::WriteText(
      dir / "d.jsonl",
      std::string(R"({"context":["a"],"response":"x y","mentions":[{"start":0,"end":2,"item_id":"i"},{"start":1,"end":3,"item_id":"j"}]})") +
          "\n" + R"({"context":[],"response":"r"})" + "\n" + "not json\n" +
          R"({"context":["a"],"response":"ab","mentions":[{"start":1,"end":9,"item_id":"i"}]})" +
          "\n" + R"({"context":["ok"],"response":"fine"})" + "\n");
  LoadStats stats;
  auto records = LoadDialogues(dir / "d.jsonl", &stats);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].response, "fine");
  EXPECT_EQ(records[0].record_index, 0u);
  EXPECT_EQ(stats.empty_context, 1u);
  EXPECT_EQ(stats.malformed, 3u);
}

TEST(LoadDialoguesTest, MentionOffsetsCountCodePoints) {
  testing::TempDir dir;
  testing::WriteText(
      dir / "d.jsonl",
      R"({"context":["é"],"response":"très Amélie","mentions":[{"start":5,"end":11,"item_id":"m"}]})"
      "\n");
  auto records = LoadDialogues(dir / "d.jsonl");
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].mentions[0].end, 11u);
}

TEST(LoadDialoguesTest, SerializationRoundTrip) {
  auto items = testing::MakeItems(40, Domain::kMovie, 2);
  auto records = testing::MakeDialogues(items, 10, 3, 2);
  testing::TempDir dir;
  const std::string text = SerializeDialogues(records);
  testing::WriteText(dir / "d.jsonl", text);
  auto back = LoadDialogues(dir / "d.jsonl");
  ASSERT_EQ(back.size(), records.size());
  EXPECT_EQ(SerializeDialogues(back), text);
}

TEST(ExampleTest, Validate) {
  DialogueExample ex{"e", "d", {"c"}, {"a", "b"}, {0, 1}, {}};
  EXPECT_NO_THROW(ValidateExample(ex, 2));
  EXPECT_EQ(RelevantIndex(ex), 1u);
  EXPECT_EQ(KindOf([&] { ValidateExample(ex, 3); }), ErrorKind::kPrecondition);
  ex.labels = {1, 1};
  EXPECT_EQ(KindOf([&] { ValidateExample(ex); }), ErrorKind::kPrecondition);
  ex.labels = {1};
  EXPECT_EQ(KindOf([&] { ValidateExample(ex); }), ErrorKind::kPrecondition);
}

std::vector<DialogueRecord> Records(size_t n) {
  auto items = testing::MakeItems(200, Domain::kMovie, 3);
  return testing::MakeDialogues(items, n, 3, 3);
}

TEST(Bm25CandidatesTest, FiftyCandidatesWithTrueResponseOnce) {
  auto records = Records(120);
  auto pool = BuildResponsePool(records);
  const std::set<std::string> pool_set(pool.texts.begin(), pool.texts.end());
  CandidateStats stats;
  auto examples = BuildBm25Candidates(records, pool, {}, 7, &stats);
  ASSERT_EQ(examples.size(), records.size());
  for (size_t i = 0; i < examples.size(); ++i) {
    const auto& ex = examples[i];
    ASSERT_NO_THROW(ValidateExample(ex, 50));
    EXPECT_EQ(ex.candidates[RelevantIndex(ex)], records[i].response);
    EXPECT_EQ(std::count(ex.candidates.begin(), ex.candidates.end(), records[i].response), 1);
    std::set<std::string> distinct(ex.candidates.begin(), ex.candidates.end());
    EXPECT_EQ(distinct.size(), 50u);
    for (const auto& c : ex.candidates) EXPECT_TRUE(pool_set.count(c));
    EXPECT_EQ(ex.context, records[i].context);
  }
}

TEST(Bm25CandidatesTest, NegativesAreTopBm25Hits) {
  auto records = Records(60);
  auto pool = BuildResponsePool(records);
  CandidateSetPolicy policy{5, CandidateMode::kBm25};
  auto examples = BuildBm25Candidates(records, pool, policy, 1);
  for (size_t i = 0; i < examples.size(); ++i) {
    std::vector<std::string> expected;
    std::set<std::string> taken{records[i].response};
    for (const auto& hit : pool.index.Retrieve(JoinContext(records[i].context), 1000)) {
      const std::string& text = pool.texts[*pool.index.DocIndex(hit.doc_id)];
      if (taken.insert(text).second) expected.push_back(text);
      if (expected.size() == 4) break;
    }
    if (expected.size() < 4) continue;
    std::vector<std::string> got;
    for (size_t c = 0; c < 5; ++c) {
      if (examples[i].labels[c] == 0) got.push_back(examples[i].candidates[c]);
    }
    EXPECT_EQ(got, expected) << i;
  }
}

TEST(Bm25CandidatesTest, OnlyHitIsTrueResponsePadsRemainder) {
  std::vector<DialogueRecord> records;
  for (int i = 0; i < 60; ++i) {
    DialogueRecord r;
    r.dialogue_id = "d" + std::to_string(i);
    r.record_index = static_cast<size_t>(i);
    r.context = {"q" + std::to_string(i)};
    r.response = "q" + std::to_string(i) + " reply" + std::to_string(i);
    records.push_back(r);
  }
  auto pool = BuildResponsePool(records);
  CandidateStats stats;
  auto examples = BuildBm25Candidates(records, pool, {}, 2, &stats);
  ASSERT_EQ(examples.size(), 60u);
  EXPECT_EQ(stats.padded_examples, 60u);
  EXPECT_EQ(stats.padded_negatives, 60u * 49u);
  for (const auto& ex : examples) ASSERT_NO_THROW(ValidateExample(ex, 50));
}

TEST(Bm25CandidatesTest, SmallPoolIsConfigError) {
  auto records = Records(5);
  auto pool = BuildResponsePool(records);
  ASSERT_LT(pool.distinct_texts, 50u);
  EXPECT_EQ(KindOf([&] { BuildBm25Candidates(records, pool, {}, 0); }), ErrorKind::kConfig);
}

TEST(Bm25CandidatesTest, DeterministicAndPositionSpread) {
  auto records = Records(200);
  auto pool = BuildResponsePool(records);
  const std::string a = SerializeExamples(BuildBm25Candidates(records, pool, {}, 11));
  const std::string b = SerializeExamples(BuildBm25Candidates(records, pool, {}, 11));
  EXPECT_EQ(a, b);
  EXPECT_NE(a, SerializeExamples(BuildBm25Candidates(records, pool, {}, 12)));
  std::set<size_t> positions;
  for (const auto& ex : BuildBm25Candidates(records, pool, {}, 11)) {
    positions.insert(RelevantIndex(ex));
  }
  EXPECT_GT(positions.size(), 25u);
}

TEST(Bm25CandidatesTest, ExamplesRoundTripThroughJsonl) {
  auto records = Records(30);
  auto examples = BuildBm25Candidates(records, BuildResponsePool(records), {}, 3);
  testing::TempDir dir;
  testing::WriteText(dir / "e.jsonl", SerializeExamples(examples));
  EXPECT_EQ(SerializeExamples(LoadExamples(dir / "e.jsonl")), SerializeExamples(examples));
}

corpus::ItemCatalog SmallCatalog() {
  return corpus::ItemCatalog({{"annie", "Annie", Domain::kMovie, {}},
                              {"ygm", "You've Got Mail (1998)", Domain::kMovie, {}},
                              {"best", "The Best Years of Our Lives (1946)", Domain::kMovie, {}},
                              {"avatar", "Avatar (2009)", Domain::kMovie, {}},
                              {"wish", "Wishmaster (1997)", Domain::kMovie, {}}});
}

DialogueRecord WithMention(std::string response, std::string_view title, std::string id) {
  DialogueRecord r;
  r.dialogue_id = "d";
  r.context = {"any suggestions?"};
  const size_t byte = response.find(title);
  const size_t start = Utf8Length(std::string_view(response).substr(0, byte));
  r.mentions.push_back({start, start + Utf8Length(title), std::move(id)});
  r.response = std::move(response);
  return r;
}

TEST(AdversarialTest, ReplacesOnlyTheMentionedItem) {
  DialogueRecord r = WithMention(
      "okay no problem.. If you enjoyed Annie then you will love You've Got Mail (1998) !",
      "You've Got Mail (1998)", "ygm");
  r.context_item_ids = {"annie", "avatar", "wish"};
  auto examples = BuildAdversarialCandidates({r}, SmallCatalog(), {2, CandidateMode::kAdversarial}, 1);
  ASSERT_EQ(examples.size(), 1u);
  const auto& ex = examples[0];
  ASSERT_NO_THROW(ValidateExample(ex, 2));
  EXPECT_EQ(ex.candidates[1 - RelevantIndex(ex)],
            "okay no problem.. If you enjoyed Annie then you will love The Best Years of Our "
            "Lives (1946) !");
}

TEST(AdversarialTest, HaveYouSeen) {
  DialogueRecord r = WithMention("Have you seen Avatar (2009)", "Avatar (2009)", "avatar");
  r.context_item_ids = {"annie", "ygm", "best"};
  auto examples = BuildAdversarialCandidates({r}, SmallCatalog(), {2, CandidateMode::kAdversarial}, 5);
  ASSERT_EQ(examples.size(), 1u);
  EXPECT_EQ(examples[0].candidates[1 - RelevantIndex(examples[0])], "Have you seen Wishmaster (1997)");
}

TEST(AdversarialTest, RepeatedItemGetsSameReplacement) {
  auto items = testing::MakeItems(100, Domain::kMovie, 4);
  corpus::ItemCatalog catalog(items);
  const std::string& t = items[0].title;
  DialogueRecord r;
  r.dialogue_id = "d";
  r.context = {"hello"};
  r.response = t + " and again " + t + " and " + items[1].title;
  const size_t l0 = Utf8Length(t);
  const size_t s1 = l0 + 11;
  const size_t s2 = s1 + l0 + 5;
  r.mentions = {{0, l0, items[0].item_id},
                {s1, s1 + l0, items[0].item_id},
                {s2, s2 + Utf8Length(items[1].title), items[1].item_id}};
  auto examples = BuildAdversarialCandidates({r}, catalog, {10, CandidateMode::kAdversarial}, 8);
  ASSERT_EQ(examples.size(), 1u);
  const auto& ex = examples[0];
  EXPECT_THAT(testing::AdversarialViolations(ex, r, catalog, 10), ::testing::IsEmpty());
  std::map<size_t, std::vector<std::string>> ids_by_candidate;
  for (const auto& m : ex.mentions) ids_by_candidate[m.candidate_index].push_back(m.item_id);
  for (const auto& [c, ids] : ids_by_candidate) {
    ASSERT_EQ(ids.size(), 3u);
    EXPECT_EQ(ids[0], ids[1]);
    EXPECT_NE(ids[0], ids[2]);
  }
}

TEST(AdversarialTest, IntegrityOnSyntheticCorpus) {
  auto items = testing::MakeItems(400, Domain::kMovie, 6);
  corpus::ItemCatalog catalog(items);
  auto records = testing::MakeDialogues(items, 100, 3, 6);
  CandidateStats stats;
  auto examples =
      BuildAdversarialCandidates(records, catalog, {50, CandidateMode::kAdversarial}, 9, &stats);
  EXPECT_EQ(examples.size() + stats.skipped + stats.skipped_unresolved + stats.skipped_title_leak,
            records.size());
  EXPECT_GT(examples.size(), 250u);
  std::map<std::string, const DialogueRecord*> by_id;
  for (const auto& r : records) by_id["ex-" + std::to_string(r.record_index)] = &r;
  for (const auto& ex : examples) {
    const DialogueRecord& r = *by_id.at(ex.example_id);
    EXPECT_THAT(testing::AdversarialViolations(ex, r, catalog, 50), ::testing::IsEmpty());
    std::set<std::string> replaced;
    for (const auto& m : ex.mentions) {
      if (m.candidate_index == RelevantIndex(ex)) continue;
      EXPECT_TRUE(catalog.Contains(m.item_id));
      EXPECT_EQ(std::count(r.context_item_ids.begin(), r.context_item_ids.end(), m.item_id), 0);
      replaced.insert(m.item_id);
    }
    EXPECT_EQ(replaced.size(), 49u);
  }
}

TEST(AdversarialTest, RecordsWithoutUsableMentionsAreSkipped) {
  auto catalog = SmallCatalog();
  DialogueRecord none;
  none.context = {"x"};
  none.response = "no mention";
  DialogueRecord unknown = WithMention("see Zardoz", "Zardoz", "zardoz");
  DialogueRecord leak = WithMention("Avatar (2009) is Avatar (2009)", "Avatar (2009)", "avatar");
  leak.mentions.resize(1);
  CandidateStats stats;
  auto examples = BuildAdversarialCandidates({none, unknown, leak}, catalog,
                                             {2, CandidateMode::kAdversarial}, 0, &stats);
  EXPECT_TRUE(examples.empty());
  EXPECT_EQ(stats.skipped, 1u);
  EXPECT_EQ(stats.skipped_unresolved, 1u);
  EXPECT_EQ(stats.skipped_title_leak, 1u);
}

TEST(SplitTest, EightyTenTen) {
  std::vector<int> items(100);
  for (int i = 0; i < 100; ++i) items[static_cast<size_t>(i)] = i;
  auto splits = SplitDataset(items, {}, 3, [](int i) { return std::to_string(i); });
  EXPECT_EQ(splits[0].size(), 80u);
  EXPECT_EQ(splits[1].size(), 10u);
  EXPECT_EQ(splits[2].size(), 10u);
  auto again = SplitDataset(items, {}, 3, [](int i) { return std::to_string(i); });
  EXPECT_EQ(splits, again);
  std::set<int> all;
  for (const auto& s : splits) all.insert(s.begin(), s.end());
  EXPECT_EQ(all.size(), 100u);
}

TEST(SplitTest, BadRatiosAreConfigErrors) {
  std::vector<int> items(10);
  auto key = [](int i) { return std::to_string(i); };
  EXPECT_EQ(KindOf([&] { SplitDataset(items, {1, 0, 0}, 0, key); }), ErrorKind::kConfig);
  EXPECT_EQ(KindOf([&] { SplitDataset(items, {0.5, 0.2, 0.2}, 0, key); }), ErrorKind::kConfig);
  std::vector<int> two = {1, 2};
  EXPECT_EQ(KindOf([&] { SplitDataset(two, {0.8, 0.1, 0.1}, 0, key); }), ErrorKind::kConfig);
}

TEST(SplitTest, NoDialogueCrossesSplits) {
  auto records = Records(300);
  auto splits = SplitDataset(records, {}, 5, [](const DialogueRecord& r) { return r.dialogue_id; });
  std::map<std::string, int> split_of;
  for (int s = 0; s < 3; ++s) {
    for (const auto& r : splits[static_cast<size_t>(s)]) {
      auto [it, inserted] = split_of.emplace(r.dialogue_id, s);
      EXPECT_EQ(it->second, s) << r.dialogue_id;
    }
  }
  EXPECT_NEAR(static_cast<double>(splits[0].size()) / records.size(), 0.8, 0.02);
}

}  // namespace
}  // namespace crsprobe::dialogue
