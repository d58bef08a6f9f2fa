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

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "crsprobe/common/error.h"
#include "crsprobe/common/rng.h"
#include "crsprobe/common/text.h"
#include "crsprobe/probegen/probes.h"

namespace crsprobe::probegen {
namespace {

constexpr size_t kMaxAttemptsPerProbe = 64;

struct EligibleUser {
  const std::string* user_id = nullptr;
  std::vector<const corpus::Item*> items;  // distinct, resolvable
  std::vector<uint32_t> rated;             // sorted interned item indices
};

// Places candidates[0] (the relevant one) at a random position.
void ShuffleCandidates(Rng& rng, PairProbe& probe) {
  std::vector<size_t> order(probe.candidates.size());
  std::iota(order.begin(), order.end(), 0);
  rng.Shuffle(std::span(order));
  std::vector<std::string> candidates(order.size());
  std::vector<std::string> ids(order.size());
  for (size_t pos = 0; pos < order.size(); ++pos) {
    candidates[pos] = std::move(probe.candidates[order[pos]]);
    ids[pos] = std::move(probe.candidate_item_ids[order[pos]]);
    if (order[pos] == 0) probe.relevant_index = pos;
  }
  probe.candidates = std::move(candidates);
  probe.candidate_item_ids = std::move(ids);
}

bool HasDuplicates(const std::vector<std::string>& values) {
  std::unordered_set<std::string_view> seen;
  for (const std::string& v : values) {
    if (!seen.insert(v).second) return true;
  }
  return false;
}

}  // namespace

void ValidatePairProbe(const PairProbe& probe) {
  Require(probe.candidates.size() >= 2, ErrorKind::kPrecondition,
          "probe " + probe.probe_id + ": needs at least 2 candidates");
  Require(probe.relevant_index < probe.candidates.size(), ErrorKind::kPrecondition,
          "probe " + probe.probe_id + ": relevant_index out of range");
  Require(!HasDuplicates(probe.candidates), ErrorKind::kPrecondition,
          "probe " + probe.probe_id + ": duplicate candidates");
}

std::vector<PairProbe> BuildRecommendationProbes(
    const corpus::InteractionSet& interactions, const corpus::ItemCatalog& catalog,
    const corpus::PopularityTable& popularity, const RecommendationProbeOptions& options,
    BuildStats* stats) {
  Require(options.k >= 2, ErrorKind::kConfig, "recommendation probes: k must be >= 2");
  BuildStats local;

  std::vector<const corpus::Item*> resolved(interactions.item_count(), nullptr);
  for (uint32_t i = 0; i < interactions.item_count(); ++i) {
    resolved[i] = catalog.Find(interactions.item_id(i));
  }

  std::vector<EligibleUser> users;
  for (const auto& [user_id, entries] : interactions.by_user()) {
    EligibleUser user;
    user.user_id = &user_id;
    for (const auto& entry : entries) {
      user.rated.push_back(entry.item);
      if (resolved[entry.item] == nullptr) ++local.unresolved;
    }
    std::sort(user.rated.begin(), user.rated.end());
    user.rated.erase(std::unique(user.rated.begin(), user.rated.end()), user.rated.end());
    for (uint32_t item : user.rated) {
      if (resolved[item] != nullptr) user.items.push_back(resolved[item]);
    }
    std::sort(user.items.begin(), user.items.end(),
              [](const corpus::Item* a, const corpus::Item* b) { return a->item_id < b->item_id; });
    if (user.items.size() >= 2) users.push_back(std::move(user));
  }
  Require(!users.empty(), ErrorKind::kData,
          "recommendation probes: no user has two resolvable rated items");

  corpus::PopularitySampler sampler(
      popularity, [&](std::string_view id) { return catalog.Contains(id); });
  // Sampler index -> interned interaction index, or -1 for items nobody rated.
  std::unordered_map<std::string_view, uint32_t> interned;
  for (uint32_t i = 0; i < interactions.item_count(); ++i) {
    interned.emplace(interactions.item_id(i), i);
  }
  std::vector<int64_t> sampler_item(sampler.size(), -1);
  std::vector<const corpus::Item*> sampler_catalog(sampler.size());
  for (size_t i = 0; i < sampler.size(); ++i) {
    if (auto it = interned.find(sampler.ids()[i]); it != interned.end()) sampler_item[i] = it->second;
    sampler_catalog[i] = catalog.Find(sampler.ids()[i]);
  }
  Require(sampler.size() >= options.k + 1, ErrorKind::kConfig,
          "recommendation probes: corpus has " + std::to_string(sampler.size()) +
              " distinct popular items, need at least k+1 = " + std::to_string(options.k + 1));

  std::vector<size_t> user_order;
  size_t count = options.n;
  if (options.unique_users) {
    user_order.resize(users.size());
    std::iota(user_order.begin(), user_order.end(), 0);
    Rng order_rng(DeriveSeed(options.seed, "rec-users"));
    order_rng.Shuffle(std::span(user_order));
    count = std::min(count, users.size());
  }

  std::vector<PairProbe> probes;
  probes.reserve(count);
  for (size_t p = 0; p < count; ++p) {
    Rng rng(DeriveSeed(options.seed, "rec-probe", p));
    bool built = false;
    const size_t attempts = options.unique_users ? 1 : kMaxAttemptsPerProbe;
    for (size_t attempt = 0; attempt < attempts && !built; ++attempt) {
      const EligibleUser& user =
          options.unique_users ? users[user_order[p]] : users[rng.Uniform(users.size())];
      const corpus::Item* query = user.items[rng.Uniform(user.items.size())];
      std::vector<const corpus::Item*> others;
      for (const corpus::Item* item : user.items) {
        if (item != query && item->title != query->title) others.push_back(item);
      }
      if (others.empty()) continue;
      const corpus::Item* relevant = others[rng.Uniform(others.size())];

      auto negatives = sampler.SampleDistinct(rng, options.k - 1, [&](size_t idx) {
        const int64_t item = sampler_item[idx];
        if (item >= 0 && std::binary_search(user.rated.begin(), user.rated.end(),
                                            static_cast<uint32_t>(item))) {
          return true;
        }
        return sampler_catalog[idx]->title == relevant->title;
      });
      if (!negatives) continue;

      PairProbe probe;
      probe.probe_id = "rec-" + std::to_string(p);
      probe.task = PairTask::kRecommendation;
      probe.user_id = *user.user_id;
      probe.query_item_id = query->item_id;
      RecPrompt first = RenderRecPrompt(query->title, relevant->title);
      probe.query_sentence = first.query;
      probe.candidates.push_back(first.document);
      probe.candidate_item_ids.push_back(relevant->item_id);
      for (size_t idx : *negatives) {
        const corpus::Item* item = sampler_catalog[idx];
        probe.candidates.push_back(RenderRecPrompt(query->title, item->title).document);
        probe.candidate_item_ids.push_back(item->item_id);
      }
      if (HasDuplicates(probe.candidates)) continue;
      ShuffleCandidates(rng, probe);
      probes.push_back(std::move(probe));
      built = true;
    }
    if (!built) {
      Require(options.unique_users, ErrorKind::kData,
              "recommendation probes: could not build probe " + std::to_string(p) + " after " +
                  std::to_string(kMaxAttemptsPerProbe) + " attempts");
      ++local.skipped;
    }
  }
  if (stats) *stats = local;
  return probes;
}

std::vector<PairProbe> BuildSearchProbes(const corpus::ReviewSet& reviews,
                                         const corpus::ItemCatalog& catalog,
                                         const SearchProbeOptions& options,
                                         BuildStats* stats) {
  Require(options.k >= 2, ErrorKind::kConfig, "search probes: k must be >= 2");
  Require(options.max_review_words >= 1, ErrorKind::kConfig,
          "search probes: max_review_words must be positive");
  Require(catalog.size() >= options.k, ErrorKind::kConfig,
          "search probes: catalog has " + std::to_string(catalog.size()) +
              " items, need at least k = " + std::to_string(options.k));
  BuildStats local;

  struct Source {
    const corpus::Item* item;
    const corpus::Review* review;
  };
  std::vector<Source> sources;
  for (const auto& [item_id, list] : reviews.by_item()) {
    const corpus::Item* item = catalog.Find(item_id);
    if (item == nullptr) {
      local.unresolved += list.size();
      continue;
    }
    for (const corpus::Review& review : list) sources.push_back({item, &review});
  }
  Require(!sources.empty(), ErrorKind::kData, "search probes: no review resolves to the catalog");

  Rng order_rng(DeriveSeed(options.seed, "search-reviews"));
  order_rng.Shuffle(std::span(sources));

  const auto& items = catalog.items();
  std::vector<PairProbe> probes;
  probes.reserve(std::min(options.n, sources.size()));
  for (const Source& source : sources) {
    if (probes.size() >= options.n) break;
    std::string query = TruncateWords(StripTitle(source.review->text, source.item->title),
                                      options.max_review_words);
    if (query.empty()) {
      ++local.skipped;
      continue;
    }
    const size_t p = probes.size();
    Rng rng(DeriveSeed(options.seed, "search-probe", p));

    PairProbe probe;
    probe.probe_id = "search-" + std::to_string(p);
    probe.task = PairTask::kSearch;
    probe.query_sentence = std::move(query);
    probe.query_item_id = source.item->item_id;
    probe.candidates.push_back(source.item->title);
    probe.candidate_item_ids.push_back(source.item->item_id);

    auto accept = [&](const corpus::Item& other) {
      return std::find(probe.candidates.begin(), probe.candidates.end(), other.title) ==
             probe.candidates.end();
    };
    size_t attempts = 0;
    const size_t max_attempts = 32 * options.k + 64;
    while (probe.candidates.size() < options.k && attempts++ < max_attempts) {
      const corpus::Item& other = items[rng.Uniform(items.size())];
      if (accept(other)) {
        probe.candidates.push_back(other.title);
        probe.candidate_item_ids.push_back(other.item_id);
      }
    }
    if (probe.candidates.size() < options.k) {
      // Few distinct titles left: draw uniformly from the explicit remainder.
      std::vector<const corpus::Item*> rest;
      for (const corpus::Item& other : items) {
        if (accept(other)) rest.push_back(&other);
      }
      // Titles may repeat across ids; keep one id per title.
      std::vector<const corpus::Item*> unique_rest;
      std::unordered_set<std::string_view> titles;
      for (const corpus::Item* other : rest) {
        if (titles.insert(other->title).second) unique_rest.push_back(other);
      }
      Require(unique_rest.size() >= options.k - probe.candidates.size(), ErrorKind::kConfig,
              "search probes: not enough distinct titles for k candidates");
      rng.Shuffle(std::span(unique_rest));
      for (size_t i = 0; probe.candidates.size() < options.k; ++i) {
        probe.candidates.push_back(unique_rest[i]->title);
        probe.candidate_item_ids.push_back(unique_rest[i]->item_id);
      }
    }
    ShuffleCandidates(rng, probe);
    probes.push_back(std::move(probe));
  }
  if (stats) *stats = local;
  return probes;
}

}  // namespace crsprobe::probegen
