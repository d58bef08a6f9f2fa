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

#include <cstdio>
#include <unordered_set>

#include "crsprobe/bm25/tokenizer.h"
#include "crsprobe/dialogue/dialogue.h"

namespace crsprobe::dialogue {

std::string JoinContext(const std::vector<std::string>& context) {
  std::string out;
  for (size_t i = 0; i < context.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += context[i];
  }
  return out;
}

std::string PoolDocId(size_t position) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "r%010zu", position);
  return buf;
}

ResponsePool BuildResponsePool(const std::vector<DialogueRecord>& records, bm25::Params params) {
  ResponsePool pool;
  std::vector<std::pair<std::string, std::string>> docs;
  docs.reserve(records.size());
  std::unordered_set<std::string_view> distinct;
  for (size_t i = 0; i < records.size(); ++i) {
    pool.texts.push_back(records[i].response);
    docs.emplace_back(PoolDocId(i), records[i].response);
  }
  for (const std::string& t : pool.texts) distinct.insert(t);
  pool.distinct_texts = distinct.size();
  pool.index = bm25::InvertedIndex::Build(std::move(docs), params);
  return pool;
}

std::vector<DialogueExample> BuildBm25Candidates(const std::vector<DialogueRecord>& records,
                                                 const ResponsePool& pool,
                                                 const CandidateSetPolicy& policy, uint64_t seed,
                                                 CandidateStats* stats) {
  Require(policy.k >= 2, ErrorKind::kConfig, "candidate policy: k must be >= 2");
  Require(pool.distinct_texts >= policy.k, ErrorKind::kConfig,
          "response pool has " + std::to_string(pool.distinct_texts) +
              " distinct responses, fewer than k = " + std::to_string(policy.k));
  Require(pool.index.doc_count() == pool.texts.size(), ErrorKind::kPrecondition,
          "response index does not cover the response pool");
  CandidateStats local;
  const size_t wanted = policy.k - 1;

  std::vector<DialogueExample> examples;
  examples.reserve(records.size());
  for (const DialogueRecord& record : records) {
    Rng rng(DeriveSeed(seed, "bm25-example", record.record_index));
    std::vector<std::string> negatives;
    std::unordered_set<std::string_view> taken{record.response};

    const std::vector<std::string> query = bm25::Tokenize(JoinContext(record.context));
    size_t top_n = wanted + 8;
    while (true) {
      negatives.clear();
      taken = {record.response};
      auto hits = pool.index.RetrieveTokens(query, top_n);
      for (const bm25::ScoredDoc& hit : hits) {
        const std::string& text = pool.texts[*pool.index.DocIndex(hit.doc_id)];
        if (!taken.insert(text).second) continue;
        negatives.push_back(text);
        if (negatives.size() == wanted) break;
      }
      if (negatives.size() == wanted || hits.size() < top_n) break;
      top_n *= 2;
    }

    if (negatives.size() < wanted) {
      ++local.padded_examples;
      local.padded_negatives += wanted - negatives.size();
      size_t attempts = 0;
      const size_t max_attempts = 32 * policy.k + 64;
      while (negatives.size() < wanted && attempts++ < max_attempts) {
        const std::string& text = pool.texts[rng.Uniform(pool.texts.size())];
        if (taken.insert(text).second) negatives.push_back(text);
      }
      if (negatives.size() < wanted) {
        std::vector<size_t> rest;
        std::unordered_set<std::string_view> seen;
        for (size_t i = 0; i < pool.texts.size(); ++i) {
          if (!taken.contains(pool.texts[i]) && seen.insert(pool.texts[i]).second) rest.push_back(i);
        }
        rng.Shuffle(std::span(rest));
        for (size_t i = 0; negatives.size() < wanted; ++i) negatives.push_back(pool.texts[rest[i]]);
      }
    }

    DialogueExample example;
    example.example_id = "ex-" + std::to_string(record.record_index);
    example.dialogue_id = record.dialogue_id;
    example.context = record.context;
    const size_t position = rng.Uniform(policy.k);
    example.candidates = std::move(negatives);
    example.candidates.insert(example.candidates.begin() + static_cast<std::ptrdiff_t>(position),
                              record.response);
    example.labels.assign(policy.k, 0);
    example.labels[position] = 1;
    for (const Mention& m : record.mentions) {
      example.mentions.push_back({position, m.start, m.end, m.item_id});
    }
    examples.push_back(std::move(example));
  }
  if (stats) *stats = local;
  return examples;
}

}  // namespace crsprobe::dialogue
