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

#include "crsprobe/scoring/mock_scorer.h"

#include <algorithm>
#include <numeric>

#include "crsprobe/common/error.h"
#include "crsprobe/common/io.h"
#include "crsprobe/common/rng.h"
#include "crsprobe/common/text.h"

namespace crsprobe::scoring {
namespace {

ScorerInfo MockInfo(std::string model) {
  ScorerInfo info;
  info.model = std::move(model);
  return info;
}

double HashUnit(std::string_view a, std::string_view b = {}, uint64_t salt = 0) {
  uint64_t h = SplitMix64(Fnv1a64(a) ^ SplitMix64(Fnv1a64(b) + salt));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

TokenRanking TopK(std::vector<std::pair<double, std::string>> scored, size_t top_k) {
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& x, const auto& y) { return x.first > y.first; });
  TokenRanking ranking;
  for (size_t i = 0; i < scored.size() && i < top_k; ++i) {
    ranking.scores.push_back(scored[i].first);
    ranking.tokens.push_back(std::move(scored[i].second));
  }
  return ranking;
}

}  // namespace

const std::vector<std::string>& MockVocabulary() {
  static const std::vector<std::string> vocab = {
      "action",   "adventure", "animation", "biography", "children", "classic", "comedy",
      "comic",    "country",   "crime",     "documentary", "drama",  "fantasy", "fiction",
      "history",  "horror",    "jazz",      "musical",   "mystery",  "pop",     "rap",
      "rock",     "romance",   "science",   "thriller",  "war",      "western", "blues",
      "poetry",   "young",     "adult",     "paranormal", "television", "tv",    "the",
      "a",        "good",      "new",       "great",     "japanese", "robot",   "2003"};
  return vocab;
}

ScorerInfo UniformRandomScorer::Info() { return MockInfo("mock:uniform"); }

std::vector<CandidateScores> UniformRandomScorer::Draw(
    std::string_view stream, std::span<const CandidateQuery> queries) const {
  std::vector<CandidateScores> out;
  out.reserve(queries.size());
  for (const CandidateQuery& q : queries) {
    Rng rng(DeriveSeed(seed_, std::string(stream) + "/" + q.key));
    CandidateScores s;
    for (size_t i = 0; i < q.candidates.size(); ++i) s.scores.push_back(rng.UniformReal());
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<TokenRanking> UniformRandomScorer::MaskedTopK(std::span<const MaskedPrompt> prompts,
                                                          size_t top_k) {
  std::vector<TokenRanking> out;
  for (const MaskedPrompt& p : prompts) {
    Rng rng(DeriveSeed(seed_, "mlm/" + p.key));
    std::vector<std::pair<double, std::string>> scored;
    for (const std::string& t : MockVocabulary()) scored.emplace_back(rng.UniformReal(), t);
    out.push_back(TopK(std::move(scored), top_k));
  }
  return out;
}

std::vector<CandidateScores> UniformRandomScorer::NextSentence(
    std::span<const CandidateQuery> queries) {
  return Draw("nsp", queries);
}

std::vector<SentenceVector> UniformRandomScorer::Embed(std::span<const std::string> sentences,
                                                       Pooling pooling) {
  std::vector<SentenceVector> out;
  for (const std::string& s : sentences) {
    Rng rng(DeriveSeed(seed_, std::string("embed/") + std::string(PoolingName(pooling)) + "/" + s));
    SentenceVector v;
    v.pooling = pooling;
    for (size_t i = 0; i < kMockEmbeddingDim; ++i) v.values.push_back(2.0 * rng.UniformReal() - 1.0);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<CandidateScores> UniformRandomScorer::Similarity(
    std::span<const CandidateQuery> queries, Pooling pooling, bool) {
  return Draw(std::string("sim/") + std::string(PoolingName(pooling)), queries);
}

std::vector<CandidateScores> UniformRandomScorer::RankResponses(
    std::span<const CandidateQuery> queries) {
  return Draw("rank", queries);
}

ScorerInfo HashScorer::Info() { return MockInfo("mock:hash"); }

std::vector<TokenRanking> HashScorer::MaskedTopK(std::span<const MaskedPrompt> prompts,
                                                 size_t top_k) {
  std::vector<TokenRanking> out;
  for (const MaskedPrompt& p : prompts) {
    std::vector<std::pair<double, std::string>> scored;
    for (const std::string& t : MockVocabulary()) scored.emplace_back(HashUnit(p.text, t), t);
    out.push_back(TopK(std::move(scored), top_k));
  }
  return out;
}

std::vector<CandidateScores> HashScorer::NextSentence(std::span<const CandidateQuery> queries) {
  std::vector<CandidateScores> out;
  for (const CandidateQuery& q : queries) {
    const std::string a = Join(q.context, " ");
    CandidateScores s;
    for (const std::string& c : q.candidates) s.scores.push_back(HashUnit(a, c, 1));
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<SentenceVector> HashScorer::Embed(std::span<const std::string> sentences,
                                              Pooling pooling) {
  std::vector<SentenceVector> out;
  for (const std::string& s : sentences) {
    SentenceVector v;
    v.pooling = pooling;
    for (size_t i = 0; i < kMockEmbeddingDim; ++i) {
      v.values.push_back(2.0 * HashUnit(s, PoolingName(pooling), i) - 1.0);
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<CandidateScores> HashScorer::RankResponses(std::span<const CandidateQuery> queries) {
  std::vector<CandidateScores> out;
  for (const CandidateQuery& q : queries) {
    const std::string ctx = Join(q.context, "\n");
    CandidateScores s;
    for (const std::string& c : q.candidates) s.scores.push_back(HashUnit(ctx, c, 2));
    out.push_back(std::move(s));
  }
  return out;
}

void LabelOracleScorer::Register(std::span<const probegen::PairProbe> probes) {
  std::lock_guard lock(mu_);
  for (const auto& p : probes) relevant_[p.probe_id] = p.candidates.at(p.relevant_index);
}

void LabelOracleScorer::Register(std::span<const probegen::GenreProbe> probes) {
  std::lock_guard lock(mu_);
  for (const auto& p : probes) {
    std::vector<std::string> words;
    for (const std::string& g : p.gold_genres) {
      for (std::string& w : SplitWhitespace(ToLowerAscii(g))) words.push_back(std::move(w));
    }
    genres_[p.probe_id] = std::move(words);
  }
}

void LabelOracleScorer::Register(std::span<const dialogue::DialogueExample> examples) {
  std::lock_guard lock(mu_);
  for (const auto& e : examples) relevant_[e.example_id] = e.candidates.at(dialogue::RelevantIndex(e));
}

ScorerInfo LabelOracleScorer::Info() { return MockInfo("mock:oracle"); }

std::vector<CandidateScores> LabelOracleScorer::Judge(std::span<const CandidateQuery> queries) const {
  std::lock_guard lock(mu_);
  std::vector<CandidateScores> out;
  for (const CandidateQuery& q : queries) {
    auto it = relevant_.find(q.key);
    Require(it != relevant_.end(), ErrorKind::kPrecondition,
            "label oracle has no labels for " + q.key);
    CandidateScores s;
    for (const std::string& c : q.candidates) {
      s.scores.push_back(c == it->second ? kRelevantScore : kOtherScore);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<TokenRanking> LabelOracleScorer::MaskedTopK(std::span<const MaskedPrompt> prompts,
                                                        size_t top_k) {
  std::lock_guard lock(mu_);
  std::vector<TokenRanking> out;
  for (const MaskedPrompt& p : prompts) {
    auto it = genres_.find(p.key);
    Require(it != genres_.end(), ErrorKind::kPrecondition,
            "label oracle has no gold genres for " + p.key);
    std::vector<std::pair<double, std::string>> scored;
    double score = 0.9;
    for (const std::string& w : it->second) {
      if (std::none_of(scored.begin(), scored.end(), [&](const auto& s) { return s.second == w; })) {
        scored.emplace_back(score, w);
        score *= 0.99;
      }
    }
    for (const std::string& t : MockVocabulary()) {
      if (std::none_of(scored.begin(), scored.end(), [&](const auto& s) { return s.second == t; })) {
        scored.emplace_back(0.001, t);
      }
    }
    out.push_back(TopK(std::move(scored), top_k));
  }
  return out;
}

std::vector<CandidateScores> LabelOracleScorer::NextSentence(
    std::span<const CandidateQuery> queries) {
  return Judge(queries);
}

std::vector<SentenceVector> LabelOracleScorer::Embed(std::span<const std::string> sentences,
                                                     Pooling pooling) {
  return HashScorer().Embed(sentences, pooling);
}

std::vector<CandidateScores> LabelOracleScorer::Similarity(
    std::span<const CandidateQuery> queries, Pooling, bool) {
  return Judge(queries);
}

std::vector<CandidateScores> LabelOracleScorer::RankResponses(
    std::span<const CandidateQuery> queries) {
  return Judge(queries);
}

}  // namespace crsprobe::scoring
