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

#ifndef CRSPROBE_METRICS_SWEEP_H_
#define CRSPROBE_METRICS_SWEEP_H_

#include <optional>
#include <span>
#include <vector>

#include "crsprobe/metrics/metrics.h"
#include "crsprobe/probegen/probes.h"
#include "crsprobe/scoring/ranking.h"
#include "crsprobe/scoring/scorer.h"

namespace crsprobe::metrics {

// Keeps the relevant candidate and the first x-1 negatives, in their original
// order. Throws a config error when x exceeds the candidate count or x < 1.
probegen::PairProbe TruncateProbe(const probegen::PairProbe& probe, size_t x);

// Indices of the candidates TruncateProbe keeps.
std::vector<size_t> KeptCandidates(const probegen::PairProbe& probe, size_t x);

// Mean R_x@1 for each x, re-scoring truncated probes with the scorer. Failed
// probes are left out of the affected point.
std::vector<RankEval> SweepCandidates(scoring::Scorer& scorer,
                                      std::span<const probegen::PairProbe> probes,
                                      scoring::Technique technique, std::span<const size_t> xs,
                                      const scoring::BatchOptions& options = {});

// Same curve from per-candidate scores already computed at full size
// (candidate order; nullopt for failed probes). Equivalent to re-scoring for
// any scorer whose candidate scores do not depend on the other candidates.
std::vector<RankEval> SweepFromScores(std::span<const probegen::PairProbe> probes,
                                      std::span<const std::optional<std::vector<double>>> scores,
                                      std::span<const size_t> xs);

// Per-candidate scores in candidate order recovered from a ranking.
std::vector<double> ScoresByCandidate(const scoring::CandidateRanking& ranking);

}  // namespace crsprobe::metrics

#endif  // CRSPROBE_METRICS_SWEEP_H_
