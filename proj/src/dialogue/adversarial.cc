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

#include <unordered_set>

#include "crsprobe/common/text.h"
#include "crsprobe/dialogue/dialogue.h"

namespace crsprobe::dialogue {
namespace {

struct ByteSpan {
  size_t begin = 0;
  size_t end = 0;
  size_t slot = 0;  // index into the distinct mentioned items
};

// Text between (and around) the mention spans, in order.
std::vector<std::string_view> OutsideSegments(std::string_view text,
                                              const std::vector<ByteSpan>& spans) {
  std::vector<std::string_view> segments;
  size_t cursor = 0;
  for (const ByteSpan& s : spans) {
    segments.push_back(text.substr(cursor, s.begin - cursor));
    cursor = s.end;
  }
  segments.push_back(text.substr(cursor));
  return segments;
}

}  // namespace

std::vector<DialogueExample> BuildAdversarialCandidates(
    const std::vector<DialogueRecord>& records, const corpus::ItemCatalog& catalog,
    const CandidateSetPolicy& policy, uint64_t seed, CandidateStats* stats) {
  Require(policy.k >= 2, ErrorKind::kConfig, "candidate policy: k must be >= 2");
  CandidateStats local;
  const auto& items = catalog.items();
  const size_t negatives_wanted = policy.k - 1;

  std::vector<DialogueExample> examples;
  for (const DialogueRecord& record : records) {
    if (record.mentions.empty()) {
      ++local.skipped;
      continue;
    }
    // Distinct mentioned items in first-appearance order.
    std::vector<std::string> slots;
    std::vector<ByteSpan> spans;
    bool resolvable = true;
    for (const Mention& m : record.mentions) {
      if (!catalog.Contains(m.item_id)) {
        resolvable = false;
        break;
      }
      auto it = std::find(slots.begin(), slots.end(), m.item_id);
      const size_t slot = static_cast<size_t>(it - slots.begin());
      if (it == slots.end()) slots.push_back(m.item_id);
      spans.push_back({*Utf8ByteOffset(record.response, m.start),
                       *Utf8ByteOffset(record.response, m.end), slot});
    }
    if (!resolvable) {
      ++local.skipped_unresolved;
      continue;
    }

    std::vector<std::string> original_titles;
    std::unordered_set<std::string_view> excluded;
    for (const std::string& id : slots) {
      excluded.insert(id);
      original_titles.push_back(catalog.Find(id)->title);
    }
    for (const std::string& id : record.context_item_ids) excluded.insert(id);

    const auto segments = OutsideSegments(record.response, spans);
    bool leaks = false;
    for (std::string_view seg : segments) {
      for (const std::string& title : original_titles) leaks |= ContainsIgnoreCase(seg, title);
    }
    if (leaks) {
      ++local.skipped_title_leak;
      continue;
    }

    size_t excluded_in_catalog = 0;
    for (std::string_view id : excluded) excluded_in_catalog += catalog.Contains(id) ? 1 : 0;
    const size_t eligible = items.size() - excluded_in_catalog;
    Require(eligible >= negatives_wanted * slots.size(), ErrorKind::kConfig,
            "adversarial candidates: catalog too small for k = " + std::to_string(policy.k));

    Rng rng(DeriveSeed(seed, "adversarial-example", record.record_index));
    std::unordered_set<std::string_view> used_items;
    std::unordered_set<std::string> seen_texts{record.response};
    std::vector<std::string> candidates;
    std::vector<std::vector<CandidateMention>> candidate_mentions;
    const size_t max_attempts = 64 * policy.k + 256;
    size_t attempts = 0;
    while (candidates.size() < negatives_wanted && attempts++ < max_attempts) {
      std::vector<const corpus::Item*> replacement(slots.size(), nullptr);
      bool ok = true;
      for (size_t s = 0; s < slots.size() && ok; ++s) {
        const corpus::Item* pick = nullptr;
        for (size_t tries = 0; tries < 256 && pick == nullptr; ++tries) {
          const corpus::Item& c = items[rng.Uniform(items.size())];
          if (excluded.contains(c.item_id) || used_items.contains(c.item_id)) continue;
          if (std::find(replacement.begin(), replacement.end(), &c) != replacement.end()) continue;
          pick = &c;
        }
        ok = pick != nullptr;
        replacement[s] = pick;
      }
      if (!ok) continue;

      std::string text;
      std::vector<CandidateMention> mentions;
      size_t cp_cursor = 0;
      for (size_t i = 0; i < spans.size(); ++i) {
        text.append(segments[i]);
        cp_cursor += Utf8Length(segments[i]);
        const corpus::Item* rep = replacement[spans[i].slot];
        text.append(rep->title);
        const size_t len = Utf8Length(rep->title);
        mentions.push_back({0, cp_cursor, cp_cursor + len, rep->item_id});
        cp_cursor += len;
      }
      text.append(segments.back());

      bool clean = true;
      for (const std::string& title : original_titles) clean &= !ContainsIgnoreCase(text, title);
      if (!clean || !seen_texts.insert(text).second) continue;
      for (const corpus::Item* rep : replacement) used_items.insert(rep->item_id);
      candidates.push_back(std::move(text));
      candidate_mentions.push_back(std::move(mentions));
    }
    if (candidates.size() < negatives_wanted) {
      ++local.skipped;
      continue;
    }

    DialogueExample example;
    example.example_id = "ex-" + std::to_string(record.record_index);
    example.dialogue_id = record.dialogue_id;
    example.context = record.context;
    const size_t position = rng.Uniform(policy.k);
    candidates.insert(candidates.begin() + static_cast<std::ptrdiff_t>(position), record.response);
    candidate_mentions.insert(candidate_mentions.begin() + static_cast<std::ptrdiff_t>(position),
                              std::vector<CandidateMention>{});
    for (const Mention& m : record.mentions) {
      candidate_mentions[position].push_back({0, m.start, m.end, m.item_id});
    }
    for (size_t c = 0; c < candidate_mentions.size(); ++c) {
      for (CandidateMention& m : candidate_mentions[c]) {
        m.candidate_index = c;
        example.mentions.push_back(std::move(m));
      }
    }
    example.candidates = std::move(candidates);
    example.labels.assign(policy.k, 0);
    example.labels[position] = 1;
    examples.push_back(std::move(example));
  }
  if (stats) *stats = local;
  return examples;
}

}  // namespace crsprobe::dialogue
