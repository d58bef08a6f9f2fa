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

#include "crsprobe/metrics/metrics.h"

#include <algorithm>
#include <cmath>

#include "crsprobe/common/error.h"
#include "crsprobe/common/text.h"

namespace crsprobe::metrics {
namespace {

void RequireRelevant(std::span<const int> labels, size_t candidates) {
  Require(labels.size() == candidates, ErrorKind::kPrecondition,
          "label count does not match candidate count");
  Require(std::any_of(labels.begin(), labels.end(), [](int l) { return l > 0; }),
          ErrorKind::kPrecondition, "undefined metric: no relevant candidate");
}

template <typename Outcome>
void RequireAligned(size_t items, std::span<const Outcome> outcomes) {
  Require(items == outcomes.size(), ErrorKind::kPrecondition,
          "outcome count does not match the dataset");
}

}  // namespace

double GenreRecall(const scoring::TokenRanking& ranking, std::span<const std::string> gold,
                   size_t k) {
  Require(k >= 1, ErrorKind::kPrecondition, "k must be at least 1");
  Require(!gold.empty(), ErrorKind::kPrecondition, "no gold genres");
  std::vector<std::string> top;
  for (size_t i = 0; i < ranking.tokens.size() && i < k; ++i) {
    top.push_back(ToLowerAscii(Trim(ranking.tokens[i])));
  }
  size_t hit = 0;
  for (const std::string& genre : gold) {
    const std::vector<std::string> words = SplitWhitespace(ToLowerAscii(genre));
    const bool found = std::any_of(words.begin(), words.end(), [&](const std::string& w) {
      return std::find(top.begin(), top.end(), w) != top.end();
    });
    if (found) ++hit;
  }
  return std::min(1.0, static_cast<double>(hit) / static_cast<double>(gold.size()));
}

double RecallXAt1(const scoring::CandidateRanking& ranking, size_t relevant_index) {
  Require(!ranking.order.empty(), ErrorKind::kPrecondition, "empty ranking");
  return ranking.order.front() == relevant_index ? 1.0 : 0.0;
}

double NdcgAtK(const scoring::CandidateRanking& ranking, std::span<const int> labels, size_t k) {
  RequireRelevant(labels, ranking.order.size());
  double dcg = 0.0;
  for (size_t i = 0; i < k && i < ranking.order.size(); ++i) {
    if (labels[ranking.order[i]] > 0) dcg += 1.0 / std::log2(static_cast<double>(i) + 2.0);
  }
  const size_t relevant =
      static_cast<size_t>(std::count_if(labels.begin(), labels.end(), [](int l) { return l > 0; }));
  double idcg = 0.0;
  for (size_t i = 0; i < k && i < relevant; ++i) {
    idcg += 1.0 / std::log2(static_cast<double>(i) + 2.0);
  }
  return dcg / idcg;
}

double Mrr(const scoring::CandidateRanking& ranking, std::span<const int> labels) {
  RequireRelevant(labels, ranking.order.size());
  for (size_t i = 0; i < ranking.order.size(); ++i) {
    if (labels[ranking.order[i]] > 0) return 1.0 / static_cast<double>(i + 1);
  }
  Fail(ErrorKind::kPrecondition, "ranking does not cover the relevant candidate");
}

double Mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  double c = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      c += (sum - t) + v;
    } else {
      c += (v - t) + sum;
    }
    sum = t;
  }
  return (sum + c) / static_cast<double>(values.size());
}

double StdDev(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double mean = Mean(values);
  std::vector<double> sq;
  sq.reserve(values.size());
  for (double v : values) sq.push_back((v - mean) * (v - mean));
  const double var = Mean(sq) * static_cast<double>(values.size()) /
                     static_cast<double>(values.size() - 1);
  return std::sqrt(var);
}

std::string_view MetricName(Metric metric) {
  switch (metric) {
    case Metric::kRecallAt1:
      return "R@1";
    case Metric::kRecallAt5:
      return "R@5";
    case Metric::kRecallXAt1:
      return "R_x@1";
    case Metric::kNdcgAt10:
      return "nDCG@10";
    case Metric::kMrr:
      return "MRR";
  }
  return "?";
}

Metric ParseMetric(std::string_view name) {
  for (Metric m : {Metric::kRecallAt1, Metric::kRecallAt5, Metric::kRecallXAt1,
                   Metric::kNdcgAt10, Metric::kMrr}) {
    if (MetricName(m) == name) return m;
  }
  Fail(ErrorKind::kData, "unknown metric: " + std::string(name));
}

void Finalize(RankEval& eval) { eval.mean = Mean(eval.per_query); }

GenreEval EvaluateGenreProbes(std::span<const probegen::GenreProbe> probes,
                              std::span<const scoring::TokenOutcome> outcomes) {
  RequireAligned(probes.size(), outcomes);
  GenreEval eval;
  eval.at_1.metric = Metric::kRecallAt1;
  eval.at_1.k_or_x = 1;
  eval.at_5.metric = Metric::kRecallAt5;
  eval.at_5.k_or_x = 5;
  for (size_t i = 0; i < probes.size(); ++i) {
    if (!outcomes[i].ok()) {
      ++eval.failed;
      continue;
    }
    const auto& gold = probes[i].gold_genres;
    eval.at_1.per_query.push_back(GenreRecall(*outcomes[i].value, gold, 1));
    eval.at_5.per_query.push_back(GenreRecall(*outcomes[i].value, gold, 5));
    eval.at_1.keys.push_back(probes[i].probe_id);
    eval.at_5.keys.push_back(probes[i].probe_id);
  }
  Finalize(eval.at_1);
  Finalize(eval.at_5);
  eval.r_at_1 = eval.at_1.mean;
  eval.r_at_5 = eval.at_5.mean;
  eval.n_probes = eval.at_1.per_query.size();
  return eval;
}

PairEval EvaluatePairProbes(std::span<const probegen::PairProbe> probes,
                            std::span<const scoring::RankingOutcome> outcomes) {
  RequireAligned(probes.size(), outcomes);
  PairEval eval;
  eval.recall.metric = Metric::kRecallXAt1;
  for (size_t i = 0; i < probes.size(); ++i) {
    const size_t x = probes[i].candidates.size();
    Require(eval.recall.k_or_x == 0 || eval.recall.k_or_x == x, ErrorKind::kData,
            "probes differ in candidate count");
    eval.recall.k_or_x = x;
    if (!outcomes[i].ok()) {
      ++eval.failed;
      continue;
    }
    eval.recall.per_query.push_back(RecallXAt1(*outcomes[i].value, probes[i].relevant_index));
    eval.recall.keys.push_back(probes[i].probe_id);
  }
  Finalize(eval.recall);
  return eval;
}

ResponseEval EvaluateExamples(std::span<const dialogue::DialogueExample> examples,
                              std::span<const scoring::RankingOutcome> outcomes) {
  RequireAligned(examples.size(), outcomes);
  ResponseEval eval;
  eval.ndcg.metric = Metric::kNdcgAt10;
  eval.ndcg.k_or_x = 10;
  eval.mrr.metric = Metric::kMrr;
  for (size_t i = 0; i < examples.size(); ++i) {
    if (!outcomes[i].ok()) {
      ++eval.failed;
      continue;
    }
    const auto& ranking = *outcomes[i].value;
    eval.ndcg.per_query.push_back(NdcgAtK(ranking, examples[i].labels, 10));
    eval.mrr.per_query.push_back(Mrr(ranking, examples[i].labels));
    eval.ndcg.keys.push_back(examples[i].example_id);
    eval.mrr.keys.push_back(examples[i].example_id);
  }
  Finalize(eval.ndcg);
  Finalize(eval.mrr);
  return eval;
}

}  // namespace crsprobe::metrics
