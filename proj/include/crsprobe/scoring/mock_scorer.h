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

#ifndef CRSPROBE_SCORING_MOCK_SCORER_H_
#define CRSPROBE_SCORING_MOCK_SCORER_H_

#include <cstdint>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "crsprobe/dialogue/dialogue.h"
#include "crsprobe/probegen/probes.h"
#include "crsprobe/scoring/scorer.h"

namespace crsprobe::scoring {

// Fixed vocabulary the mocks rank for masked prompts.
const std::vector<std::string>& MockVocabulary();

inline constexpr size_t kMockEmbeddingDim = 16;

// Independent uniform [0,1) scores. Draws are keyed by (seed, request key),
// so results do not depend on batching or thread scheduling, and two
// instances with the same seed produce identical streams.
class UniformRandomScorer : public Scorer {
 public:
  explicit UniformRandomScorer(uint64_t seed) : seed_(seed) {}

  ScorerInfo Info() override;
  std::vector<TokenRanking> MaskedTopK(std::span<const MaskedPrompt> prompts,
                                       size_t top_k) override;
  std::vector<CandidateScores> NextSentence(std::span<const CandidateQuery> queries) override;
  std::vector<SentenceVector> Embed(std::span<const std::string> sentences,
                                    Pooling pooling) override;
  std::vector<CandidateScores> Similarity(std::span<const CandidateQuery> queries,
                                          Pooling pooling, bool cosine) override;
  std::vector<CandidateScores> RankResponses(std::span<const CandidateQuery> queries) override;

 private:
  std::vector<CandidateScores> Draw(std::string_view stream,
                                    std::span<const CandidateQuery> queries) const;
  uint64_t seed_;
};

// Pure function of the input text: identical inputs give identical outputs.
class HashScorer : public Scorer {
 public:
  ScorerInfo Info() override;
  std::vector<TokenRanking> MaskedTopK(std::span<const MaskedPrompt> prompts,
                                       size_t top_k) override;
  std::vector<CandidateScores> NextSentence(std::span<const CandidateQuery> queries) override;
  std::vector<SentenceVector> Embed(std::span<const std::string> sentences,
                                    Pooling pooling) override;
  std::vector<CandidateScores> RankResponses(std::span<const CandidateQuery> queries) override;
};

// Sees the labels of registered datasets through the request key and scores
// relevant candidates 0.9, others 0.1. Gold genres lead its masked
// predictions. Requests for unregistered keys are precondition errors.
class LabelOracleScorer : public Scorer {
 public:
  static constexpr double kRelevantScore = 0.9;
  static constexpr double kOtherScore = 0.1;

  void Register(std::span<const probegen::PairProbe> probes);
  void Register(std::span<const probegen::GenreProbe> probes);
  void Register(std::span<const dialogue::DialogueExample> examples);

  ScorerInfo Info() override;
  std::vector<TokenRanking> MaskedTopK(std::span<const MaskedPrompt> prompts,
                                       size_t top_k) override;
  std::vector<CandidateScores> NextSentence(std::span<const CandidateQuery> queries) override;
  std::vector<SentenceVector> Embed(std::span<const std::string> sentences,
                                    Pooling pooling) override;
  std::vector<CandidateScores> Similarity(std::span<const CandidateQuery> queries,
                                          Pooling pooling, bool cosine) override;
  std::vector<CandidateScores> RankResponses(std::span<const CandidateQuery> queries) override;

 private:
  std::vector<CandidateScores> Judge(std::span<const CandidateQuery> queries) const;

  mutable std::mutex mu_;
  std::map<std::string, std::string, std::less<>> relevant_;
  std::map<std::string, std::vector<std::string>, std::less<>> genres_;
};

}  // namespace crsprobe::scoring

#endif  // CRSPROBE_SCORING_MOCK_SCORER_H_
