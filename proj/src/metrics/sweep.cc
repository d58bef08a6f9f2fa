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

#include "crsprobe/metrics/sweep.h"

#include "crsprobe/common/error.h"

namespace crsprobe::metrics {
namespace {

void CheckXs(std::span<const probegen::PairProbe> probes, std::span<const size_t> xs) {
  Require(!xs.empty(), ErrorKind::kConfig, "no candidate counts to sweep");
  for (const auto& p : probes) {
    for (size_t x : xs) {
      Require(x >= 1 && x <= p.candidates.size(), ErrorKind::kConfig,
              "sweep size " + std::to_string(x) + " exceeds the " +
                  std::to_string(p.candidates.size()) + " candidates of " + p.probe_id);
    }
  }
}

RankEval NewPoint(size_t x) {
  RankEval eval;
  eval.metric = Metric::kRecallXAt1;
  eval.k_or_x = x;
  return eval;
}

}  // namespace

std::vector<size_t> KeptCandidates(const probegen::PairProbe& probe, size_t x) {
  Require(x >= 1 && x <= probe.candidates.size(), ErrorKind::kConfig,
          "cannot truncate " + probe.probe_id + " to " + std::to_string(x) + " candidates");
  std::vector<size_t> kept;
  size_t negatives = 0;
  for (size_t i = 0; i < probe.candidates.size(); ++i) {
    if (i == probe.relevant_index) {
      kept.push_back(i);
    } else if (negatives + 1 < x) {
      kept.push_back(i);
      ++negatives;
    }
  }
  return kept;
}

probegen::PairProbe TruncateProbe(const probegen::PairProbe& probe, size_t x) {
  const std::vector<size_t> kept = KeptCandidates(probe, x);
  probegen::PairProbe out = probe;
  out.candidates.clear();
  out.candidate_item_ids.clear();
  for (size_t j = 0; j < kept.size(); ++j) {
    const size_t i = kept[j];
    if (i == probe.relevant_index) out.relevant_index = j;
    out.candidates.push_back(probe.candidates[i]);
    if (!probe.candidate_item_ids.empty()) {
      out.candidate_item_ids.push_back(probe.candidate_item_ids[i]);
    }
  }
  return out;
}

std::vector<RankEval> SweepCandidates(scoring::Scorer& scorer,
                                      std::span<const probegen::PairProbe> probes,
                                      scoring::Technique technique, std::span<const size_t> xs,
                                      const scoring::BatchOptions& options) {
  CheckXs(probes, xs);
  std::vector<RankEval> curve;
  for (size_t x : xs) {
    std::vector<probegen::PairProbe> truncated;
    truncated.reserve(probes.size());
    for (const auto& p : probes) truncated.push_back(TruncateProbe(p, x));
    std::vector<scoring::RankingOutcome> outcomes =
        scoring::RankProbes(scorer, truncated, technique, options);
    RankEval point = NewPoint(x);
    for (size_t i = 0; i < truncated.size(); ++i) {
      if (!outcomes[i].ok()) continue;
      point.per_query.push_back(RecallXAt1(*outcomes[i].value, truncated[i].relevant_index));
      point.keys.push_back(truncated[i].probe_id);
    }
    Finalize(point);
    curve.push_back(std::move(point));
  }
  return curve;
}

std::vector<RankEval> SweepFromScores(std::span<const probegen::PairProbe> probes,
                                      std::span<const std::optional<std::vector<double>>> scores,
                                      std::span<const size_t> xs) {
  Require(probes.size() == scores.size(), ErrorKind::kPrecondition,
          "score count does not match the probes");
  CheckXs(probes, xs);
  std::vector<RankEval> curve;
  for (size_t x : xs) {
    RankEval point = NewPoint(x);
    for (size_t i = 0; i < probes.size(); ++i) {
      if (!scores[i]) continue;
      Require(scores[i]->size() == probes[i].candidates.size(), ErrorKind::kData,
              probes[i].probe_id + ": stored scores do not match its candidates");
      const std::vector<size_t> kept = KeptCandidates(probes[i], x);
      std::vector<double> sub;
      size_t relevant = 0;
      for (size_t j = 0; j < kept.size(); ++j) {
        if (kept[j] == probes[i].relevant_index) relevant = j;
        sub.push_back((*scores[i])[kept[j]]);
      }
      point.per_query.push_back(RecallXAt1(scoring::RankFromScores(sub), relevant));
      point.keys.push_back(probes[i].probe_id);
    }
    Finalize(point);
    curve.push_back(std::move(point));
  }
  return curve;
}

std::vector<double> ScoresByCandidate(const scoring::CandidateRanking& ranking) {
  Require(ranking.order.size() == ranking.scores.size(), ErrorKind::kPrecondition,
          "ranking order and scores differ in length");
  std::vector<double> out(ranking.order.size());
  for (size_t i = 0; i < ranking.order.size(); ++i) {
    Require(ranking.order[i] < out.size(), ErrorKind::kPrecondition, "order is not a permutation");
    out[ranking.order[i]] = ranking.scores[i];
  }
  return out;
}

}  // namespace crsprobe::metrics
