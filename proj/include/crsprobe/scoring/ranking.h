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

#ifndef CRSPROBE_SCORING_RANKING_H_
#define CRSPROBE_SCORING_RANKING_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crsprobe/dialogue/dialogue.h"
#include "crsprobe/probegen/probes.h"
#include "crsprobe/scoring/scorer.h"

namespace crsprobe::scoring {

// order[i] is the candidate index at rank i; scores[i] is its score.
struct CandidateRanking {
  std::vector<size_t> order;
  std::vector<double> scores;
  bool truncated = false;
};

// Sorts descending by score, ties by candidate index ascending. Throws a
// precondition error on NaN.
CandidateRanking RankFromScores(std::span<const double> scores);

// 1-based rank of a candidate index.
size_t RankOf(const CandidateRanking& ranking, size_t candidate);

enum class Technique { kSimCls, kSimMean, kNsp };
std::string_view TechniqueName(Technique technique);  // SIM_CLS, SIM_MEAN, NSP
Technique ParseTechnique(std::string_view name);

struct TruncatedContext {
  std::vector<std::string> context;
  bool truncated = false;
};

// Drops the oldest utterances until the context, one separator per
// utterance, and the longest candidate fit in max_tokens whitespace tokens.
// The newest utterance is always kept.
TruncatedContext TruncateContext(const std::vector<std::string>& context,
                                 const std::vector<std::string>& candidates, size_t max_tokens);

// Prompt must contain placeholder exactly once; it is replaced by the
// scorer's own mask token before the request.
TokenRanking MlmTopK(Scorer& scorer, std::string_view prompt, size_t top_k,
                     std::string_view placeholder = "[MASK]");

double NspScore(Scorer& scorer, std::string_view query, std::string_view document);

CandidateRanking RankProbe(Scorer& scorer, const probegen::PairProbe& probe,
                           Technique technique);
CandidateRanking RankResponses(Scorer& scorer, const dialogue::DialogueExample& example);

struct BatchOptions {
  size_t batch_size = 32;
  size_t concurrency = 1;  // batches in flight
};

template <typename T>
struct Outcome {
  std::string key;
  std::optional<T> value;
  std::string error;  // set when value is empty
  bool ok() const { return value.has_value(); }
};

using RankingOutcome = Outcome<CandidateRanking>;
using TokenOutcome = Outcome<TokenRanking>;

// Batch runners. Results come back in input order. A failing batch is
// retried item by item, so an error only marks the items that caused it.
std::vector<RankingOutcome> RankProbes(Scorer& scorer,
                                       std::span<const probegen::PairProbe> probes,
                                       Technique technique, const BatchOptions& options = {});
std::vector<RankingOutcome> RankExamples(Scorer& scorer,
                                         std::span<const dialogue::DialogueExample> examples,
                                         const BatchOptions& options = {});
std::vector<TokenOutcome> RankGenreProbes(Scorer& scorer,
                                          std::span<const probegen::GenreProbe> probes,
                                          size_t top_k, const BatchOptions& options = {});

}  // namespace crsprobe::scoring

#endif  // CRSPROBE_SCORING_RANKING_H_
