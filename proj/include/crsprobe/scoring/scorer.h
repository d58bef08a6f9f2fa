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

#ifndef CRSPROBE_SCORING_SCORER_H_
#define CRSPROBE_SCORING_SCORER_H_

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace crsprobe::scoring {

// Vocabulary tokens for a masked position, best first.
struct TokenRanking {
  std::vector<std::string> tokens;
  std::vector<double> scores;  // non-increasing
};

enum class Pooling { kCls, kMean };
std::string_view PoolingName(Pooling pooling);

struct SentenceVector {
  std::vector<double> values;
  Pooling pooling = Pooling::kCls;
};

// Dot product of two sentence vectors. Throws a precondition error when the
// pooling or dimension differ.
double SimScore(const SentenceVector& query, const SentenceVector& document);
double CosineScore(const SentenceVector& query, const SentenceVector& document);

struct ScorerInfo {
  std::string model;
  std::string mask_token = "[MASK]";
  std::string sep_token = "[SEP]";
  size_t max_tokens = 512;
};

struct MaskedPrompt {
  std::string key;   // probe id
  std::string text;  // contains info.mask_token exactly once
};

// One ranking request: a probe (context = {query sentence}) or a dialogue
// example (context = utterances). key is the probe or example id.
struct CandidateQuery {
  std::string key;
  std::vector<std::string> context;
  std::vector<std::string> candidates;
};

struct CandidateScores {
  std::vector<double> scores;  // one per candidate, in candidate order
  bool truncated = false;
};

// Model access used by the probes. Implementations throw crsprobe::Error on
// failure; batching, concurrency and per-item error isolation are handled by
// the callers in ranking.h. Separator tokens are inserted by the
// implementation, never by the pipeline.
class Scorer {
 public:
  virtual ~Scorer() = default;

  virtual ScorerInfo Info() = 0;

  virtual std::vector<TokenRanking> MaskedTopK(std::span<const MaskedPrompt> prompts,
                                               size_t top_k) = 0;

  // P(candidate follows the query sentence) for every candidate.
  virtual std::vector<CandidateScores> NextSentence(std::span<const CandidateQuery> queries) = 0;

  virtual std::vector<SentenceVector> Embed(std::span<const std::string> sentences,
                                            Pooling pooling) = 0;

  // Query/candidate vector similarity. The default embeds every sentence
  // through Embed and takes dot products (or cosines).
  virtual std::vector<CandidateScores> Similarity(std::span<const CandidateQuery> queries,
                                                  Pooling pooling, bool cosine = false);

  // Relevance of each candidate response to the dialogue context.
  virtual std::vector<CandidateScores> RankResponses(std::span<const CandidateQuery> queries) = 0;
};

}  // namespace crsprobe::scoring

#endif  // CRSPROBE_SCORING_SCORER_H_
