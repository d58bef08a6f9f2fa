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

#ifndef CRSPROBE_SCORING_HTTP_SCORER_H_
#define CRSPROBE_SCORING_HTTP_SCORER_H_

#include <chrono>
#include <mutex>
#include <optional>
#include <string>

#include "crsprobe/scoring/scorer.h"

namespace crsprobe::scoring {

struct HttpScorerOptions {
  std::string endpoint;  // http://host:port[/prefix]
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{200};
  std::chrono::milliseconds timeout{60000};
};

// Client for the model service's JSON protocol. Thread-safe: each request
// opens its own connection, so several batches may be in flight at once.
// Network failures and 5xx responses are retried with exponential backoff;
// other non-2xx responses fail immediately.
class HttpScorer : public Scorer {
 public:
  explicit HttpScorer(HttpScorerOptions options);

  ScorerInfo Info() override;
  std::vector<TokenRanking> MaskedTopK(std::span<const MaskedPrompt> prompts,
                                       size_t top_k) override;
  std::vector<CandidateScores> NextSentence(std::span<const CandidateQuery> queries) override;
  std::vector<SentenceVector> Embed(std::span<const std::string> sentences,
                                    Pooling pooling) override;
  // One /v1/rank call per query. Contexts longer than the service window
  // lose their oldest utterances first; the result is flagged truncated.
  std::vector<CandidateScores> RankResponses(std::span<const CandidateQuery> queries) override;

 private:
  std::string Post(const std::string& path, const std::string& body);
  std::string Get(const std::string& path);
  std::string Send(const std::string& path, const std::string* body);

  HttpScorerOptions options_;
  std::string scheme_host_port_;
  std::string prefix_;
  std::mutex mu_;
  std::optional<ScorerInfo> info_;
};

}  // namespace crsprobe::scoring

#endif  // CRSPROBE_SCORING_HTTP_SCORER_H_
