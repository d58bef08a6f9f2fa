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

#ifndef CRSPROBE_DIALOGUE_DIALOGUE_H_
#define CRSPROBE_DIALOGUE_DIALOGUE_H_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crsprobe/bm25/index.h"
#include "crsprobe/common/error.h"
#include "crsprobe/common/rng.h"
#include "crsprobe/corpus/corpus.h"

namespace crsprobe::dialogue {

// Item mention inside the true response. Offsets count Unicode code points,
// half-open [start, end).
struct Mention {
  size_t start = 0;
  size_t end = 0;
  std::string item_id;
};

struct DialogueRecord {
  std::string dialogue_id;
  size_t record_index = 0;  // 0-based position among the accepted records
  std::vector<std::string> context;
  std::string response;
  std::vector<Mention> mentions;  // sorted, non-overlapping
  // Items mentioned in the context; excluded as adversarial replacements.
  std::vector<std::string> context_item_ids;
};

struct LoadStats {
  size_t empty_context = 0;
  size_t malformed = 0;
};

// Canonical JSONL: {"dialogue_id"?, "context": [..], "response": "..",
// "mentions"?: [{"start","end","item_id"}], "context_item_ids"?: [..]}.
// Records without dialogue_id get "d<line>". Malformed lines, including
// overlapping or out-of-range mentions, are skipped and counted.
std::vector<DialogueRecord> LoadDialogues(const std::filesystem::path& path,
                                          LoadStats* stats = nullptr);
std::string SerializeDialogues(const std::vector<DialogueRecord>& records);

struct CandidateMention {
  size_t candidate_index = 0;
  size_t start = 0;
  size_t end = 0;
  std::string item_id;
};

struct DialogueExample {
  std::string example_id;
  std::string dialogue_id;
  std::vector<std::string> context;
  std::vector<std::string> candidates;
  std::vector<int> labels;  // exactly one 1
  std::vector<CandidateMention> mentions;
};

size_t RelevantIndex(const DialogueExample& example);
// Throws a precondition error unless |candidates| = |labels| and exactly one
// label is set (and, when k > 0, there are k candidates).
void ValidateExample(const DialogueExample& example, size_t k = 0);

enum class CandidateMode { kBm25, kAdversarial };
std::string_view CandidateModeName(CandidateMode mode);

struct CandidateSetPolicy {
  size_t k = 50;
  CandidateMode mode = CandidateMode::kBm25;
};

// Context utterances joined by a single space.
std::string JoinContext(const std::vector<std::string>& context);

// Every true response of the corpus, indexed for BM25. Doc ids are
// "r" + zero-padded position, so doc order equals pool order.
struct ResponsePool {
  std::vector<std::string> texts;
  bm25::InvertedIndex index;
  size_t distinct_texts = 0;
};

std::string PoolDocId(size_t position);
ResponsePool BuildResponsePool(const std::vector<DialogueRecord>& records,
                               bm25::Params params = {});

struct CandidateStats {
  size_t padded_examples = 0;
  size_t padded_negatives = 0;
  size_t skipped = 0;
  size_t skipped_unresolved = 0;
  size_t skipped_title_leak = 0;
};

// True response plus the top k-1 distinct BM25 hits for the joined context
// (string-equal copies of the true response excluded), padded with uniformly
// sampled pool responses. Throws a config error when the pool has fewer than
// k distinct responses.
std::vector<DialogueExample> BuildBm25Candidates(const std::vector<DialogueRecord>& records,
                                                 const ResponsePool& pool,
                                                 const CandidateSetPolicy& policy,
                                                 uint64_t seed,
                                                 CandidateStats* stats = nullptr);

// k-1 copies of the true response with each mentioned item replaced by the
// title of a uniformly sampled catalog item not mentioned in the dialogue.
// Records without mentions, with unresolvable mentions, or whose unchanged
// text already names a mentioned title are skipped and counted.
std::vector<DialogueExample> BuildAdversarialCandidates(
    const std::vector<DialogueRecord>& records, const corpus::ItemCatalog& catalog,
    const CandidateSetPolicy& policy, uint64_t seed, CandidateStats* stats = nullptr);

std::string SerializeExamples(const std::vector<DialogueExample>& examples);
std::vector<DialogueExample> LoadExamples(const std::filesystem::path& path);

struct SplitRatios {
  double train = 0.8;
  double valid = 0.1;
  double test = 0.1;
};

// Seeded shuffle of key groups, then a contiguous split by example counts so
// no key crosses splits. Each split keeps the input order. Throws a config
// error on non-positive ratios, ratios not summing to 1, or an empty split.
template <typename T, typename KeyFn>
std::array<std::vector<T>, 3> SplitDataset(const std::vector<T>& items, const SplitRatios& ratios,
                                           uint64_t seed, KeyFn key) {
  Require(ratios.train > 0 && ratios.valid > 0 && ratios.test > 0, ErrorKind::kConfig,
          "split ratios must all be positive");
  Require(std::abs(ratios.train + ratios.valid + ratios.test - 1.0) < 1e-9, ErrorKind::kConfig,
          "split ratios must sum to 1");

  std::map<std::string, size_t> group_of;
  std::vector<std::vector<size_t>> groups;
  for (size_t i = 0; i < items.size(); ++i) {
    auto [it, inserted] = group_of.try_emplace(std::string(key(items[i])), groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(i);
  }
  Rng rng(DeriveSeed(seed, "split"));
  rng.Shuffle(std::span(groups));

  const double n = static_cast<double>(items.size());
  const auto train_target = static_cast<size_t>(std::llround(n * ratios.train));
  const auto valid_target = static_cast<size_t>(std::llround(n * ratios.valid));
  std::array<std::vector<size_t>, 3> indices;
  size_t assigned = 0;
  for (const auto& group : groups) {
    const size_t split = assigned < train_target                  ? 0
                         : assigned < train_target + valid_target ? 1
                                                                  : 2;
    indices[split].insert(indices[split].end(), group.begin(), group.end());
    assigned += group.size();
  }
  std::array<std::vector<T>, 3> out;
  for (size_t s = 0; s < 3; ++s) {
    Require(!indices[s].empty(), ErrorKind::kConfig,
            "split " + std::to_string(s) + " would be empty");
    std::sort(indices[s].begin(), indices[s].end());
    for (size_t i : indices[s]) out[s].push_back(items[i]);
  }
  return out;
}

}  // namespace crsprobe::dialogue

#endif  // CRSPROBE_DIALOGUE_DIALOGUE_H_
