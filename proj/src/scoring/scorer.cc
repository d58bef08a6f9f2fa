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

#include "crsprobe/scoring/scorer.h"

#include <cmath>
#include <unordered_map>

#include "crsprobe/common/error.h"

namespace crsprobe::scoring {

std::string_view PoolingName(Pooling pooling) {
  return pooling == Pooling::kCls ? "cls" : "mean";
}

double SimScore(const SentenceVector& query, const SentenceVector& document) {
  Require(query.pooling == document.pooling, ErrorKind::kPrecondition,
          "sim_score: pooling mismatch");
  Require(query.values.size() == document.values.size(), ErrorKind::kPrecondition,
          "sim_score: dimension mismatch (" + std::to_string(query.values.size()) + " vs " +
              std::to_string(document.values.size()) + ")");
  double sum = 0.0;
  for (size_t i = 0; i < query.values.size(); ++i) sum += query.values[i] * document.values[i];
  return sum;
}

double CosineScore(const SentenceVector& query, const SentenceVector& document) {
  const double dot = SimScore(query, document);
  double qq = 0.0;
  double dd = 0.0;
  for (double v : query.values) qq += v * v;
  for (double v : document.values) dd += v * v;
  if (qq == 0.0 || dd == 0.0) return 0.0;
  return dot / (std::sqrt(qq) * std::sqrt(dd));
}

std::vector<CandidateScores> Scorer::Similarity(std::span<const CandidateQuery> queries,
                                                Pooling pooling, bool cosine) {
  std::vector<std::string> sentences;
  std::unordered_map<std::string, size_t> slot;
  auto add = [&](const std::string& s) {
    auto [it, inserted] = slot.try_emplace(s, sentences.size());
    if (inserted) sentences.push_back(s);
  };
  for (const CandidateQuery& q : queries) {
    Require(q.context.size() == 1, ErrorKind::kPrecondition,
            "similarity needs exactly one query sentence for " + q.key);
    add(q.context.front());
    for (const std::string& c : q.candidates) add(c);
  }
  std::vector<SentenceVector> vectors = Embed(sentences, pooling);
  Require(vectors.size() == sentences.size(), ErrorKind::kTransport,
          "embed returned " + std::to_string(vectors.size()) + " vectors for " +
              std::to_string(sentences.size()) + " sentences");
  std::vector<CandidateScores> out;
  out.reserve(queries.size());
  for (const CandidateQuery& q : queries) {
    const SentenceVector& qv = vectors[slot.at(q.context.front())];
    CandidateScores scores;
    for (const std::string& c : q.candidates) {
      const SentenceVector& dv = vectors[slot.at(c)];
      scores.scores.push_back(cosine ? CosineScore(qv, dv) : SimScore(qv, dv));
    }
    out.push_back(std::move(scores));
  }
  return out;
}

}  // namespace crsprobe::scoring
