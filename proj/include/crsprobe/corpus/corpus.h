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

#ifndef CRSPROBE_CORPUS_CORPUS_H_
#define CRSPROBE_CORPUS_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "crsprobe/common/rng.h"

namespace crsprobe::corpus {

enum class Domain { kBook, kMovie, kMusic };

std::string_view DomainName(Domain domain);
std::optional<Domain> ParseDomain(std::string_view name);

struct Item {
  std::string item_id;
  std::string title;
  Domain domain = Domain::kMovie;
  // Lowercased, trimmed, duplicate-free, in first-seen order.
  std::vector<std::string> genres;
};

// Lowercases and trims each label, dropping empties and repeats.
std::vector<std::string> NormalizeGenres(const std::vector<std::string>& raw);

// Immutable after loading; items are kept sorted by item_id.
class ItemCatalog {
 public:
  ItemCatalog() = default;
  // Items with a blank title or a repeated id are rejected and counted.
  explicit ItemCatalog(std::vector<Item> items, size_t skipped = 0);

  const Item* Find(std::string_view item_id) const;
  bool Contains(std::string_view item_id) const { return Find(item_id) != nullptr; }

  const std::vector<Item>& items() const { return items_; }
  size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  size_t skipped() const { return skipped_; }

 private:
  std::vector<Item> items_;
  size_t skipped_ = 0;
};

enum class CatalogSchema { kMl25mMoviesCsv, kCanonicalJsonl };
enum class InteractionSchema { kMl25mRatingsCsv, kCanonicalJsonl };

std::optional<CatalogSchema> ParseCatalogSchema(std::string_view name);
std::optional<InteractionSchema> ParseInteractionSchema(std::string_view name);

// Throws a data error when the file is unreadable or yields no valid row.
ItemCatalog LoadCatalog(const std::filesystem::path& path, CatalogSchema schema);

struct Interaction {
  std::string user_id;
  std::string item_id;
  std::optional<double> rating;
  std::optional<int64_t> timestamp;
};

// Interactions grouped by user. Item ids are interned so memory grows with
// the number of distinct users and items plus a fixed-size entry per row.
class InteractionSet {
 public:
  struct Entry {
    uint32_t item = 0;
    std::optional<double> rating;
    std::optional<int64_t> timestamp;
  };
  using UserMap = std::map<std::string, std::vector<Entry>, std::less<>>;

  void Add(std::string_view user_id, std::string_view item_id,
           std::optional<double> rating, std::optional<int64_t> timestamp);
  void CountSkipped(size_t n = 1) { skipped_ += n; }

  const UserMap& by_user() const { return users_; }
  std::string_view item_id(uint32_t index) const { return item_ids_[index]; }
  size_t item_count() const { return item_ids_.size(); }
  size_t user_count() const { return users_.size(); }
  size_t size() const { return size_; }
  size_t skipped() const { return skipped_; }

  Interaction Materialize(std::string_view user_id, const Entry& entry) const;

 private:
  UserMap users_;
  std::vector<std::string> item_ids_;
  std::unordered_map<std::string, uint32_t> item_index_;
  size_t size_ = 0;
  size_t skipped_ = 0;
};

// Streams the file; rows with a malformed or out-of-range rating are skipped.
InteractionSet LoadInteractions(const std::filesystem::path& path,
                                InteractionSchema schema);

struct Review {
  std::string item_id;
  std::string text;
  size_t word_count = 0;
};

class ReviewSet {
 public:
  using ItemMap = std::map<std::string, std::vector<Review>, std::less<>>;

  void Add(Review review);
  void CountSkipped(size_t n = 1) { skipped_ += n; }
  void CountCapped(size_t n = 1) { capped_ += n; }

  const ItemMap& by_item() const { return by_item_; }
  size_t size() const { return size_; }
  size_t skipped() const { return skipped_; }
  size_t capped() const { return capped_; }
  double MeanWordCount() const;

 private:
  ItemMap by_item_;
  size_t size_ = 0;
  size_t skipped_ = 0;
  size_t capped_ = 0;
};

struct ReviewLoadOptions {
  // Keep at most this many reviews per item in file order; 0 keeps all.
  size_t max_reviews_per_item = 0;
};

ReviewSet LoadReviews(const std::filesystem::path& path,
                      const ReviewLoadOptions& options = {});

struct PopularityTable {
  std::map<std::string, uint64_t, std::less<>> counts;
  uint64_t total = 0;
};

// Throws a data error on an empty interaction set.
PopularityTable Popularity(const InteractionSet& interactions);

// Draws item ids with probability proportional to their popularity count.
class PopularitySampler {
 public:
  // Only items accepted by keep (when given) are sampled.
  explicit PopularitySampler(const PopularityTable& table,
                             const std::function<bool(std::string_view)>& keep = {});

  size_t size() const { return ids_.size(); }
  uint64_t total() const { return cumulative_.empty() ? 0 : cumulative_.back(); }
  const std::vector<std::string>& ids() const { return ids_; }

  // Index into ids().
  size_t SampleIndex(Rng& rng) const;
  const std::string& Sample(Rng& rng) const { return ids_[SampleIndex(rng)]; }

  // Draws count distinct indices, proportional to popularity among the
  // indices not rejected by exclude. Returns nullopt when fewer than count
  // eligible indices exist.
  std::optional<std::vector<size_t>> SampleDistinct(
      Rng& rng, size_t count, const std::function<bool(size_t)>& exclude) const;

 private:
  std::vector<std::string> ids_;
  std::vector<uint64_t> cumulative_;
};

// Canonical JSONL serializations; byte-identical for identical stores.
std::string SerializeCatalog(const ItemCatalog& catalog);
std::string SerializeInteractions(const InteractionSet& interactions);
std::string SerializeReviews(const ReviewSet& reviews);

}  // namespace crsprobe::corpus

#endif  // CRSPROBE_CORPUS_CORPUS_H_
