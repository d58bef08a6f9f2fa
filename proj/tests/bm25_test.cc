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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>

#include "crsprobe/bm25/index.h"
#include "crsprobe/bm25/tokenizer.h"
#include "crsprobe/common/error.h"
#include "crsprobe/common/rng.h"
#include "testing/synthetic.h"

namespace crsprobe::bm25 {
namespace {

using ::testing::ElementsAre;
using ::testing::IsEmpty;

using Docs = std::vector<std::pair<std::string, std::string>>;

Docs Toy() { return {{"d1", "a b"}, {"d2", "a c"}}; }

std::vector<Posting> PostingsOf(const InvertedIndex& index, const std::string& term) {
  auto span = index.Postings(term);
  return {span.begin(), span.end()};
}

TEST(TokenizerTest, Examples) {
  EXPECT_THAT(Tokenize("Star Wars (1977)!"), ElementsAre("star", "wars", "1977"));
  EXPECT_THAT(Tokenize(""), IsEmpty());
  EXPECT_THAT(Tokenize("a-b_c"), ElementsAre("a", "b", "c"));
  EXPECT_THAT(Tokenize("  ...  "), IsEmpty());
}

TEST(TokenizerTest, NonAsciiLettersStayInTokens) {
  EXPECT_THAT(Tokenize("Amélie, café!"), ElementsAre("amélie", "café"));
}

TEST(IndexTest, ToyPostings) {
  auto index = InvertedIndex::Build(Toy());
  EXPECT_EQ(index.doc_count(), 2u);
  EXPECT_DOUBLE_EQ(index.avg_doc_length(), 2.0);
  EXPECT_THAT(PostingsOf(index, "a"), ElementsAre(Posting{0, 1}, Posting{1, 1}));
  EXPECT_THAT(PostingsOf(index, "b"), ElementsAre(Posting{0, 1}));
  EXPECT_THAT(PostingsOf(index, "c"), ElementsAre(Posting{1, 1}));
  EXPECT_TRUE(index.Postings("zzz").empty());
}

TEST(IndexTest, EmptyDocKeepsZeroLength) {
  auto index = InvertedIndex::Build({{"d1", "a b c"}, {"d2", ""}});
  EXPECT_THAT(index.doc_lengths(), ElementsAre(3u, 0u));
  EXPECT_DOUBLE_EQ(index.avg_doc_length(), 1.5);
}

TEST(IndexTest, DuplicateDocIdIsError) {
  EXPECT_THROW(InvertedIndex::Build({{"d1", "a"}, {"d1", "b"}}), Error);
}

TEST(IndexTest, PostingsSortedByDocId) {
  auto index = InvertedIndex::Build({{"z", "x y"}, {"b", "x"}, {"m", "x x"}});
  EXPECT_THAT(index.doc_ids(), ElementsAre("b", "m", "z"));
  auto postings = index.Postings("x");
  ASSERT_EQ(postings.size(), 3u);
  EXPECT_TRUE(std::is_sorted(postings.begin(), postings.end(),
                             [](const Posting& l, const Posting& r) { return l.doc < r.doc; }));
}

TEST(ScoreTest, HandComputedToy) {
  auto index = InvertedIndex::Build(Toy());
  const std::vector<std::string> q = {"a"};
  EXPECT_NEAR(index.Score(q, "d1"), std::log(1.2), 1e-12);
  EXPECT_NEAR(Idf(2, 2), std::log(1.2), 1e-15);
  const std::vector<std::string> absent = {"c"};
  EXPECT_EQ(index.Score(absent, "d1"), 0.0);
}

// Reference values computed independently in Python for query "a b c".
TEST(ScoreTest, UnequalLengthsMatchReference) {
  auto index = InvertedIndex::Build({{"d1", "a a b"}, {"d2", "a c c c"}, {"d3", "b"}});
  const std::vector<std::string> q = {"a", "b", "c"};
  EXPECT_NEAR(index.Score(q, "d1"), 1.0714452953493814, 1e-12);
  EXPECT_NEAR(index.Score(q, "d2"), 1.782336438414199, 1e-12);
  EXPECT_NEAR(index.Score(q, "d3"), 0.6314552576125915, 1e-12);
}

TEST(ScoreTest, UnknownDocIsLookupError) {
  auto index = InvertedIndex::Build(Toy());
  const std::vector<std::string> q = {"a"};
  try {
    index.Score(q, "nope");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kLookup);
  }
}

TEST(ScoreTest, BZeroIgnoresLength) {
  auto index = InvertedIndex::Build({{"short", "a"}, {"long", "a x y z w v"}}, {1.2, 0.0});
  const std::vector<std::string> q = {"a"};
  EXPECT_DOUBLE_EQ(index.Score(q, "short"), index.Score(q, "long"));
}

TEST(ScoreTest, MonotoneInTermFrequency) {
  for (uint32_t tf = 0; tf < 50; ++tf) {
    EXPECT_LE(TermWeight(0.7, tf, 10, 8.0, {}), TermWeight(0.7, tf + 1, 10, 8.0, {}));
  }
}

TEST(ScoreTest, IdfIsNonNegative) {
  for (uint64_t df = 0; df <= 10; ++df) EXPECT_GE(Idf(10, df), 0.0);
}

TEST(RetrieveTest, ToyOrdering) {
  auto index = InvertedIndex::Build(Toy());
  auto hits = index.Retrieve("a b", 10);
  ASSERT_EQ(hits.size(), 2u);
  EXPECT_EQ(hits[0].doc_id, "d1");
  EXPECT_EQ(hits[1].doc_id, "d2");
  EXPECT_NEAR(hits[0].score, std::log(1.2) + std::log(2.0), 1e-12);
  EXPECT_TRUE(index.Retrieve("unseen words", 10).empty());
}

TEST(RetrieveTest, TiesBrokenByDocId) {
  auto index = InvertedIndex::Build({{"c", "x"}, {"a", "x"}, {"b", "x"}});
  auto hits = index.Retrieve("x", 3);
  ASSERT_EQ(hits.size(), 3u);
  EXPECT_EQ(hits[0].doc_id, "a");
  EXPECT_EQ(hits[1].doc_id, "b");
  EXPECT_EQ(hits[2].doc_id, "c");
}

Docs RandomDocs(size_t n, uint64_t seed) {
  Rng rng(seed);
  Docs docs;
  for (size_t i = 0; i < n; ++i) {
    std::string text;
    const size_t len = rng.Uniform(12);
    for (size_t w = 0; w < len; ++w) text += "w" + std::to_string(rng.Uniform(40)) + " ";
    docs.emplace_back("doc" + std::to_string(i), text);
  }
  return docs;
}

// Independent score-all-then-sort implementation.
std::vector<ScoredDoc> BruteForce(const Docs& docs, const std::vector<std::string>& q,
                                  size_t top_n) {
  std::map<std::string, std::vector<std::string>> toks;
  double total = 0;
  for (const auto& [id, text] : docs) {
    toks[id] = Tokenize(text);
    total += static_cast<double>(toks[id].size());
  }
  const double n = static_cast<double>(docs.size());
  const double avg = total / n;
  std::map<std::string, double> df;
  for (const auto& t : q) {
    if (df.count(t)) continue;
    for (const auto& [_, w] : toks) df[t] += std::count(w.begin(), w.end(), t) > 0 ? 1 : 0;
  }
  std::vector<ScoredDoc> all;
  for (const auto& [id, words] : toks) {
    double s = 0;
    for (const auto& t : q) {
      const double tf = static_cast<double>(std::count(words.begin(), words.end(), t));
      if (tf == 0) continue;
      const double idf = std::log(1 + (n - df[t] + 0.5) / (df[t] + 0.5));
      s += idf * tf * 2.2 /
           (tf + 1.2 * (1 - 0.75 + 0.75 * static_cast<double>(words.size()) / avg));
    }
    if (s > 0) all.push_back({id, s});
  }
  std::sort(all.begin(), all.end(), [](const ScoredDoc& l, const ScoredDoc& r) {
    return l.score != r.score ? l.score > r.score : l.doc_id < r.doc_id;
  });
  if (all.size() > top_n) all.resize(top_n);
  return all;
}

TEST(RetrieveTest, MatchesBruteForce) {
  const Docs docs = RandomDocs(1000, 3);
  auto index = InvertedIndex::Build(docs);
  Rng rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<std::string> q;
    const size_t len = 1 + rng.Uniform(5);
    for (size_t w = 0; w < len; ++w) q.push_back("w" + std::to_string(rng.Uniform(45)));
    const auto expected = BruteForce(docs, q, 50);
    const auto got = index.RetrieveTokens(q, 50);
    ASSERT_EQ(got.size(), expected.size());
    for (size_t i = 0; i < got.size(); ++i) {
      EXPECT_EQ(got[i].doc_id, expected[i].doc_id) << trial << " " << i;
      EXPECT_NEAR(got[i].score, expected[i].score, 1e-9);
    }
  }
}

TEST(RetrieveTest, PrefixProperty) {
  auto index = InvertedIndex::Build(RandomDocs(300, 5));
  for (const char* q : {"w1 w2", "w3", "w7 w7 w30"}) {
    auto ten = index.Retrieve(q, 10);
    auto one = index.Retrieve(q, 1);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0].doc_id, ten[0].doc_id);
    EXPECT_EQ(one[0].score, ten[0].score);
  }
}

TEST(SerializationTest, RoundTrip) {
  auto index = InvertedIndex::Build(RandomDocs(200, 6), {0.9, 0.4});
  const std::string bytes = index.Serialize();
  auto back = InvertedIndex::Deserialize(bytes);
  EXPECT_TRUE(back == index);
  EXPECT_EQ(back.Serialize(), bytes);
  EXPECT_EQ(back.params().k1, 0.9);
  testing::TempDir dir;
  index.Save(dir / "i.bin");
  EXPECT_TRUE(InvertedIndex::Load(dir / "i.bin") == index);
}

TEST(SerializationTest, CorruptInputIsDataError) {
  auto bytes = InvertedIndex::Build(Toy()).Serialize();
  for (std::string bad : {std::string("junk"), bytes.substr(0, bytes.size() / 2)}) {
    try {
      InvertedIndex::Deserialize(bad);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kData);
    }
  }
}

TEST(ScaleTest, BuildsLargeCorpusQuickly) {
  Rng rng(9);
  Docs docs;
  docs.reserve(173000);
  for (size_t i = 0; i < 173000; ++i) {
    std::string text;
    for (int w = 0; w < 12; ++w) text += "t" + std::to_string(rng.Uniform(20000)) + " ";
    docs.emplace_back("r" + std::to_string(i), std::move(text));
  }
  const auto start = std::chrono::steady_clock::now();
  auto index = InvertedIndex::Build(std::move(docs));
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_EQ(index.doc_count(), 173000u);
  EXPECT_LT(secs, 30.0);
}

}  // namespace
}  // namespace crsprobe::bm25
