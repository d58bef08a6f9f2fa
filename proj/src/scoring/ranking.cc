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

#include "crsprobe/scoring/ranking.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numeric>
#include <thread>

#include "crsprobe/common/error.h"
#include "crsprobe/common/text.h"

namespace crsprobe::scoring {
namespace {

size_t CountOccurrences(std::string_view text, std::string_view needle) {
  size_t count = 0;
  for (size_t pos = text.find(needle); pos != std::string_view::npos;
       pos = text.find(needle, pos + needle.size())) {
    ++count;
  }
  return count;
}

std::string ReplaceOnce(std::string_view text, std::string_view from, std::string_view to) {
  size_t pos = text.find(from);
  std::string out(text.substr(0, pos));
  out += to;
  out += text.substr(pos + from.size());
  return out;
}

MaskedPrompt PrepareMasked(std::string key, std::string_view prompt,
                           std::string_view placeholder, const ScorerInfo& info) {
  Require(!placeholder.empty(), ErrorKind::kPrecondition, "empty mask placeholder");
  const size_t n = CountOccurrences(prompt, placeholder);
  Require(n == 1, ErrorKind::kPrecondition,
          "prompt must contain exactly one " + std::string(placeholder) + ", found " +
              std::to_string(n) + ": " + std::string(prompt));
  return {std::move(key), ReplaceOnce(prompt, placeholder, info.mask_token)};
}

void CheckScores(const CandidateScores& s, size_t expected, const std::string& key) {
  Require(s.scores.size() == expected, ErrorKind::kTransport,
          key + ": scorer returned " + std::to_string(s.scores.size()) + " scores for " +
              std::to_string(expected) + " candidates");
}

CandidateQuery ProbeQuery(const probegen::PairProbe& p) {
  return {p.probe_id, {p.query_sentence}, p.candidates};
}

CandidateQuery ExampleQuery(const dialogue::DialogueExample& e) {
  return {e.example_id, e.context, e.candidates};
}

std::vector<CandidateScores> ScoreQueries(Scorer& scorer, std::span<const CandidateQuery> queries,
                                          Technique technique) {
  for (const CandidateQuery& q : queries) {
    Require(q.context.size() == 1 && !q.context.front().empty(), ErrorKind::kPrecondition,
            q.key + ": empty query sentence");
    for (const std::string& c : q.candidates) {
      Require(!c.empty(), ErrorKind::kPrecondition, q.key + ": empty candidate");
    }
  }
  switch (technique) {
    case Technique::kSimCls:
      return scorer.Similarity(queries, Pooling::kCls);
    case Technique::kSimMean:
      return scorer.Similarity(queries, Pooling::kMean);
    case Technique::kNsp:
      return scorer.NextSentence(queries);
  }
  Fail(ErrorKind::kPrecondition, "unknown technique");
}

// Runs fn over [begin, end) batches on a small worker pool. fn must write its
// own results; it is called with disjoint ranges.
void ForEachBatch(size_t total, const BatchOptions& options,
                  const std::function<void(size_t, size_t)>& fn) {
  const size_t batch = std::max<size_t>(1, options.batch_size);
  const size_t batches = (total + batch - 1) / batch;
  const size_t workers = std::min(std::max<size_t>(1, options.concurrency), batches);
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t b = next++; b < batches; b = next++) {
      fn(b * batch, std::min(total, (b + 1) * batch));
    }
  };
  if (workers <= 1) {
    work();
    return;
  }
  std::vector<std::jthread> pool;
  for (size_t w = 0; w < workers; ++w) pool.emplace_back(work);
}

std::string Annotate(const std::string& key, const std::exception& e) {
  return key + ": " + e.what();
}

// Scores queries[begin, end) as one request; on failure retries each query
// alone and records per-item errors.
void RunCandidateBatch(const std::vector<CandidateQuery>& queries,
                       size_t begin, size_t end,
                       const std::function<std::vector<CandidateScores>(
                           std::span<const CandidateQuery>)>& score,
                       std::vector<RankingOutcome>& out) {
  auto finish = [&](size_t i, const CandidateScores& s) {
    CheckScores(s, queries[i].candidates.size(), queries[i].key);
    CandidateRanking r = RankFromScores(s.scores);
    r.truncated = s.truncated;
    out[i].value = std::move(r);
  };
  std::span<const CandidateQuery> slice(queries.data() + begin, end - begin);
  try {
    std::vector<CandidateScores> scores = score(slice);
    Require(scores.size() == slice.size(), ErrorKind::kTransport,
            "scorer returned a result count that does not match the batch");
    for (size_t i = begin; i < end; ++i) finish(i, scores[i - begin]);
    return;
  } catch (const std::exception&) {
  }
  for (size_t i = begin; i < end; ++i) {
    out[i].value.reset();
    try {
      std::vector<CandidateScores> one = score(std::span(&queries[i], 1));
      Require(one.size() == 1, ErrorKind::kTransport, "scorer returned no result");
      finish(i, one.front());
    } catch (const std::exception& e) {
      out[i].value.reset();
      out[i].error = Annotate(queries[i].key, e);
    }
  }
}

std::vector<RankingOutcome> RunCandidates(
    std::vector<CandidateQuery> queries, const BatchOptions& options,
    const std::function<std::vector<CandidateScores>(std::span<const CandidateQuery>)>& score) {
  std::vector<RankingOutcome> out(queries.size());
  for (size_t i = 0; i < queries.size(); ++i) out[i].key = queries[i].key;
  ForEachBatch(queries.size(), options, [&](size_t begin, size_t end) {
    RunCandidateBatch(queries, begin, end, score, out);
  });
  return out;
}

}  // namespace

CandidateRanking RankFromScores(std::span<const double> scores) {
  for (double s : scores) {
    Require(!std::isnan(s), ErrorKind::kPrecondition, "NaN score");
  }
  CandidateRanking r;
  r.order.resize(scores.size());
  std::iota(r.order.begin(), r.order.end(), size_t{0});
  std::stable_sort(r.order.begin(), r.order.end(),
                   [&](size_t a, size_t b) { return scores[a] > scores[b]; });
  r.scores.reserve(scores.size());
  for (size_t i : r.order) r.scores.push_back(scores[i]);
  return r;
}

size_t RankOf(const CandidateRanking& ranking, size_t candidate) {
  auto it = std::find(ranking.order.begin(), ranking.order.end(), candidate);
  Require(it != ranking.order.end(), ErrorKind::kPrecondition,
          "candidate " + std::to_string(candidate) + " is not in the ranking");
  return static_cast<size_t>(it - ranking.order.begin()) + 1;
}

std::string_view TechniqueName(Technique technique) {
  switch (technique) {
    case Technique::kSimCls:
      return "SIM_CLS";
    case Technique::kSimMean:
      return "SIM_MEAN";
    case Technique::kNsp:
      return "NSP";
  }
  return "?";
}

Technique ParseTechnique(std::string_view name) {
  std::string n = ToLowerAscii(name);
  std::replace(n.begin(), n.end(), '-', '_');
  if (n == "sim_cls") return Technique::kSimCls;
  if (n == "sim_mean") return Technique::kSimMean;
  if (n == "nsp") return Technique::kNsp;
  Fail(ErrorKind::kConfig, "unknown technique: " + std::string(name));
}

TruncatedContext TruncateContext(const std::vector<std::string>& context,
                                 const std::vector<std::string>& candidates,
                                 size_t max_tokens) {
  size_t longest = 0;
  for (const std::string& c : candidates) longest = std::max(longest, CountWords(c));
  // [CLS] and the closing separator after the candidate.
  size_t budget_used = longest + 2;
  std::vector<size_t> cost;
  for (const std::string& u : context) {
    cost.push_back(CountWords(u) + 1);
    budget_used += cost.back();
  }
  size_t first = 0;
  while (budget_used > max_tokens && context.size() - first > 1) {
    budget_used -= cost[first];
    ++first;
  }
  TruncatedContext out;
  out.context.assign(context.begin() + static_cast<std::ptrdiff_t>(first), context.end());
  out.truncated = first > 0;
  return out;
}

TokenRanking MlmTopK(Scorer& scorer, std::string_view prompt, size_t top_k,
                     std::string_view placeholder) {
  MaskedPrompt p = PrepareMasked("prompt", prompt, placeholder, scorer.Info());
  std::vector<TokenRanking> r = scorer.MaskedTopK(std::span(&p, 1), top_k);
  Require(r.size() == 1, ErrorKind::kTransport, "scorer returned no masked prediction");
  return std::move(r.front());
}

double NspScore(Scorer& scorer, std::string_view query, std::string_view document) {
  Require(!query.empty() && !document.empty(), ErrorKind::kPrecondition,
          "next-sentence inputs must be non-empty");
  CandidateQuery q{"pair", {std::string(query)}, {std::string(document)}};
  std::vector<CandidateScores> r = scorer.NextSentence(std::span(&q, 1));
  Require(r.size() == 1, ErrorKind::kTransport, "scorer returned no result");
  CheckScores(r.front(), 1, q.key);
  return r.front().scores.front();
}

CandidateRanking RankProbe(Scorer& scorer, const probegen::PairProbe& probe,
                           Technique technique) {
  try {
    probegen::ValidatePairProbe(probe);
    CandidateQuery q = ProbeQuery(probe);
    std::vector<CandidateScores> r = ScoreQueries(scorer, std::span(&q, 1), technique);
    Require(r.size() == 1, ErrorKind::kTransport, "scorer returned no result");
    CheckScores(r.front(), q.candidates.size(), q.key);
    CandidateRanking ranking = RankFromScores(r.front().scores);
    ranking.truncated = r.front().truncated;
    return ranking;
  } catch (const Error& e) {
    Fail(e.kind(), Annotate(probe.probe_id, e));
  }
}

CandidateRanking RankResponses(Scorer& scorer, const dialogue::DialogueExample& example) {
  try {
    CandidateQuery q = ExampleQuery(example);
    std::vector<CandidateScores> r = scorer.RankResponses(std::span(&q, 1));
    Require(r.size() == 1, ErrorKind::kTransport, "scorer returned no result");
    CheckScores(r.front(), q.candidates.size(), q.key);
    CandidateRanking ranking = RankFromScores(r.front().scores);
    ranking.truncated = r.front().truncated;
    return ranking;
  } catch (const Error& e) {
    Fail(e.kind(), Annotate(example.example_id, e));
  }
}

std::vector<RankingOutcome> RankProbes(Scorer& scorer,
                                       std::span<const probegen::PairProbe> probes,
                                       Technique technique, const BatchOptions& options) {
  std::vector<CandidateQuery> queries;
  queries.reserve(probes.size());
  for (const auto& p : probes) queries.push_back(ProbeQuery(p));
  return RunCandidates(std::move(queries), options,
                       [&](std::span<const CandidateQuery> batch) {
                         return ScoreQueries(scorer, batch, technique);
                       });
}

std::vector<RankingOutcome> RankExamples(Scorer& scorer,
                                         std::span<const dialogue::DialogueExample> examples,
                                         const BatchOptions& options) {
  std::vector<CandidateQuery> queries;
  queries.reserve(examples.size());
  for (const auto& e : examples) queries.push_back(ExampleQuery(e));
  return RunCandidates(std::move(queries), options,
                       [&](std::span<const CandidateQuery> batch) {
                         return scorer.RankResponses(batch);
                       });
}

std::vector<TokenOutcome> RankGenreProbes(Scorer& scorer,
                                          std::span<const probegen::GenreProbe> probes,
                                          size_t top_k, const BatchOptions& options) {
  std::vector<TokenOutcome> out(probes.size());
  for (size_t i = 0; i < probes.size(); ++i) out[i].key = probes[i].probe_id;
  if (probes.empty()) return out;
  const ScorerInfo info = scorer.Info();
  auto prepare = [&](size_t i) {
    return PrepareMasked(probes[i].probe_id, probes[i].prompt, probes[i].mask_token, info);
  };
  auto store = [&](size_t i, TokenRanking r) {
    Require(r.tokens.size() == r.scores.size() && r.tokens.size() <= top_k,
            ErrorKind::kTransport, "malformed masked prediction");
    out[i].value = std::move(r);
  };
  ForEachBatch(probes.size(), options, [&](size_t begin, size_t end) {
    try {
      std::vector<MaskedPrompt> batch;
      for (size_t i = begin; i < end; ++i) batch.push_back(prepare(i));
      std::vector<TokenRanking> r = scorer.MaskedTopK(batch, top_k);
      Require(r.size() == batch.size(), ErrorKind::kTransport,
              "scorer returned a result count that does not match the batch");
      for (size_t i = begin; i < end; ++i) store(i, std::move(r[i - begin]));
      return;
    } catch (const std::exception&) {
    }
    for (size_t i = begin; i < end; ++i) {
      out[i].value.reset();
      try {
        MaskedPrompt p = prepare(i);
        std::vector<TokenRanking> r = scorer.MaskedTopK(std::span(&p, 1), top_k);
        Require(r.size() == 1, ErrorKind::kTransport, "scorer returned no result");
        store(i, std::move(r.front()));
      } catch (const std::exception& e) {
        out[i].error = Annotate(probes[i].probe_id, e);
      }
    }
  });
  return out;
}

}  // namespace crsprobe::scoring
