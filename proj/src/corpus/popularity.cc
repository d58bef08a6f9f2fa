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

#include "crsprobe/common/error.h"
#include "crsprobe/corpus/corpus.h"

namespace crsprobe::corpus {

PopularityTable Popularity(const InteractionSet& interactions) {
  Require(interactions.size() > 0, ErrorKind::kData,
          "popularity: empty interaction set");
  std::vector<uint64_t> per_item(interactions.item_count(), 0);
  for (const auto& [user, entries] : interactions.by_user()) {
    for (const auto& entry : entries) ++per_item[entry.item];
  }
  PopularityTable table;
  for (uint32_t i = 0; i < per_item.size(); ++i) {
    if (per_item[i] == 0) continue;
    table.counts.emplace(std::string(interactions.item_id(i)), per_item[i]);
    table.total += per_item[i];
  }
  return table;
}

PopularitySampler::PopularitySampler(const PopularityTable& table,
                                     const std::function<bool(std::string_view)>& keep) {
  uint64_t running = 0;
  for (const auto& [id, count] : table.counts) {
    if (count == 0 || (keep && !keep(id))) continue;
    running += count;
    ids_.push_back(id);
    cumulative_.push_back(running);
  }
}

size_t PopularitySampler::SampleIndex(Rng& rng) const {
  Require(!ids_.empty(), ErrorKind::kData, "popularity sampler is empty");
  const uint64_t r = rng.Uniform(total());
  return static_cast<size_t>(
      std::upper_bound(cumulative_.begin(), cumulative_.end(), r) - cumulative_.begin());
}

std::optional<std::vector<size_t>> PopularitySampler::SampleDistinct(
    Rng& rng, size_t count, const std::function<bool(size_t)>& exclude) const {
  std::vector<size_t> chosen;
  chosen.reserve(count);
  auto taken = [&](size_t idx) {
    return std::find(chosen.begin(), chosen.end(), idx) != chosen.end();
  };
  if (ids_.empty()) return count == 0 ? std::optional(chosen) : std::nullopt;

  // Rejection is cheap while the excluded mass is small; bounded so that a
  // heavy exclusion set falls through to the explicit scan below.
  const size_t max_attempts = 32 * count + 64;
  for (size_t attempt = 0; attempt < max_attempts && chosen.size() < count; ++attempt) {
    size_t idx = SampleIndex(rng);
    if (taken(idx) || (exclude && exclude(idx))) continue;
    chosen.push_back(idx);
  }
  if (chosen.size() == count) return chosen;

  std::vector<size_t> eligible;
  std::vector<uint64_t> weights;
  for (size_t i = 0; i < ids_.size(); ++i) {
    if (taken(i) || (exclude && exclude(i))) continue;
    eligible.push_back(i);
    weights.push_back(cumulative_[i] - (i == 0 ? 0 : cumulative_[i - 1]));
  }
  if (eligible.size() < count - chosen.size()) return std::nullopt;
  while (chosen.size() < count) {
    uint64_t total = 0;
    for (uint64_t w : weights) total += w;
    uint64_t r = rng.Uniform(total);
    size_t pick = 0;
    while (r >= weights[pick]) r -= weights[pick++];
    chosen.push_back(eligible[pick]);
    eligible.erase(eligible.begin() + static_cast<std::ptrdiff_t>(pick));
    weights.erase(weights.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return chosen;
}

}  // namespace crsprobe::corpus
