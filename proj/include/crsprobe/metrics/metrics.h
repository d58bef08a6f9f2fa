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

#ifndef CRSPROBE_METRICS_METRICS_H_
#define CRSPROBE_METRICS_METRICS_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crsprobe/dialogue/dialogue.h"
#include "crsprobe/probegen/probes.h"
#include "crsprobe/scoring/ranking.h"
#include "crsprobe/scoring/scorer.h"

namespace crsprobe::metrics {

// Fraction of gold genres with at least one of their lowercase words among
// the top-k predicted tokens (case-insensitive exact match). Each genre
// counts once however many of its words are predicted.
double GenreRecall(const scoring::TokenRanking& ranking, std::span<const std::string> gold,
                   size_t k);

// 1 when the relevant candidate is ranked first, else 0.
double RecallXAt1(const scoring::CandidateRanking& ranking, size_t relevant_index);

// Binary-gain nDCG with a 1/log2(i+1) discount. Throws a precondition error
// (undefined metric) when no label is set.
double NdcgAtK(const scoring::CandidateRanking& ranking, std::span<const int> labels,
               size_t k = 10);

// Reciprocal rank of the first relevant candidate, no cutoff. Throws like
// NdcgAtK on all-zero labels.
double Mrr(const scoring::CandidateRanking& ranking, std::span<const int> labels);

// Neumaier-compensated mean; 0 for an empty input.
double Mean(std::span<const double> values);
// Sample standard deviation (n-1 denominator); 0 when n < 2.
double StdDev(std::span<const double> values);

enum class Metric { kRecallAt1, kRecallAt5, kRecallXAt1, kNdcgAt10, kMrr };
std::string_view MetricName(Metric metric);  // R@1, R@5, R_x@1, nDCG@10, MRR
Metric ParseMetric(std::string_view name);

struct RankEval {
  Metric metric = Metric::kRecallXAt1;
  size_t k_or_x = 0;  // k for R@k and nDCG@k, x for R_x@1, 0 for MRR
  double mean = 0.0;
  std::vector<double> per_query;
  std::vector<std::string> keys;  // probe or example id per value
};

// Sets mean from per_query.
void Finalize(RankEval& eval);

struct GenreEval {
  double r_at_1 = 0.0;
  double r_at_5 = 0.0;
  size_t n_probes = 0;
  RankEval at_1;
  RankEval at_5;
  size_t failed = 0;  // probes whose scoring failed, excluded from the means
};

GenreEval EvaluateGenreProbes(std::span<const probegen::GenreProbe> probes,
                              std::span<const scoring::TokenOutcome> outcomes);

struct PairEval {
  RankEval recall;  // R_x@1 with x = candidate count
  size_t failed = 0;
};

// All probes must share one candidate count.
PairEval EvaluatePairProbes(std::span<const probegen::PairProbe> probes,
                            std::span<const scoring::RankingOutcome> outcomes);

struct ResponseEval {
  RankEval ndcg;
  RankEval mrr;
  size_t failed = 0;
};

ResponseEval EvaluateExamples(std::span<const dialogue::DialogueExample> examples,
                              std::span<const scoring::RankingOutcome> outcomes);

}  // namespace crsprobe::metrics

#endif  // CRSPROBE_METRICS_METRICS_H_
