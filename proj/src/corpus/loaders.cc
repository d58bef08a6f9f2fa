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
#include <charconv>
#include <cmath>
#include <map>
#include <unordered_set>

#include "crsprobe/common/error.h"
#include "crsprobe/common/io.h"
#include "crsprobe/common/text.h"
#include "crsprobe/corpus/corpus.h"
#include "csv.h"
#include "json.hpp"

namespace crsprobe::corpus {
namespace {

using nlohmann::json;

constexpr std::string_view kMl25mNoGenres = "(no genres listed)";

std::optional<json> ParseObject(std::string_view line) {
  json value = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (value.is_discarded() || !value.is_object()) return std::nullopt;
  return value;
}

std::optional<std::string> StringField(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) return std::nullopt;
  return it->get<std::string>();
}

// Accepts JSON strings and numbers as opaque identifiers.
std::optional<std::string> IdField(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) return std::nullopt;
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number_integer()) return it->dump();
  return std::nullopt;
}

template <typename T>
std::optional<T> ParseNumber(std::string_view text) {
  text = Trim(text);
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

bool ValidRating(double r) { return std::isfinite(r) && r >= 0.5 && r <= 5.0; }

std::vector<std::string> SplitOn(std::string_view s, char sep) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    parts.emplace_back(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

std::string_view DomainName(Domain domain) {
  switch (domain) {
    case Domain::kBook:
      return "book";
    case Domain::kMovie:
      return "movie";
    case Domain::kMusic:
      return "music";
  }
  return "movie";
}

std::optional<Domain> ParseDomain(std::string_view name) {
  if (name == "book" || name == "books") return Domain::kBook;
  if (name == "movie" || name == "movies") return Domain::kMovie;
  if (name == "music") return Domain::kMusic;
  return std::nullopt;
}

std::optional<CatalogSchema> ParseCatalogSchema(std::string_view name) {
  if (name == "ml25m_movies_csv") return CatalogSchema::kMl25mMoviesCsv;
  if (name == "canonical_jsonl") return CatalogSchema::kCanonicalJsonl;
  return std::nullopt;
}

std::optional<InteractionSchema> ParseInteractionSchema(std::string_view name) {
  if (name == "ml25m_ratings_csv") return InteractionSchema::kMl25mRatingsCsv;
  if (name == "canonical_jsonl") return InteractionSchema::kCanonicalJsonl;
  return std::nullopt;
}

std::vector<std::string> NormalizeGenres(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const std::string& label : raw) {
    std::string normalized = ToLowerAscii(Trim(label));
    if (normalized.empty()) continue;
    if (std::find(out.begin(), out.end(), normalized) != out.end()) continue;
    out.push_back(std::move(normalized));
  }
  return out;
}

ItemCatalog::ItemCatalog(std::vector<Item> items, size_t skipped) : skipped_(skipped) {
  std::stable_sort(items.begin(), items.end(),
                   [](const Item& a, const Item& b) { return a.item_id < b.item_id; });
  items_.reserve(items.size());
  for (Item& item : items) {
    std::string title(Trim(item.title));
    if (title.empty() || (!items_.empty() && items_.back().item_id == item.item_id)) {
      ++skipped_;
      continue;
    }
    item.title = std::move(title);
    item.genres = NormalizeGenres(item.genres);
    items_.push_back(std::move(item));
  }
}

const Item* ItemCatalog::Find(std::string_view item_id) const {
  auto it = std::lower_bound(items_.begin(), items_.end(), item_id,
                             [](const Item& item, std::string_view id) { return item.item_id < id; });
  if (it == items_.end() || it->item_id != item_id) return nullptr;
  return &*it;
}

ItemCatalog LoadCatalog(const std::filesystem::path& path, CatalogSchema schema) {
  std::vector<Item> items;
  size_t skipped = 0;
  ForEachLine(path, [&](std::string_view line, size_t line_number) {
    if (Trim(line).empty()) return;
    Item item;
    if (schema == CatalogSchema::kMl25mMoviesCsv) {
      if (line_number == 1 && line.starts_with("movieId")) return;
      auto fields = internal::SplitCsvLine(line);
      if (!fields || fields->size() != 3 || Trim((*fields)[0]).empty()) {
        ++skipped;
        return;
      }
      item.item_id = std::string(Trim((*fields)[0]));
      item.title = (*fields)[1];
      item.domain = Domain::kMovie;
      if ((*fields)[2] != kMl25mNoGenres) item.genres = SplitOn((*fields)[2], '|');
    } else {
      auto obj = ParseObject(line);
      if (!obj) {
        ++skipped;
        return;
      }
      auto id = IdField(*obj, "item_id");
      auto title = StringField(*obj, "title");
      auto domain_name = StringField(*obj, "domain");
      auto domain = domain_name ? ParseDomain(*domain_name) : std::nullopt;
      if (!id || id->empty() || !title || !domain) {
        ++skipped;
        return;
      }
      item.item_id = std::move(*id);
      item.title = std::move(*title);
      item.domain = *domain;
      if (auto it = obj->find("genres"); it != obj->end()) {
        if (!it->is_array()) {
          ++skipped;
          return;
        }
        for (const json& g : *it) {
          if (g.is_string()) item.genres.push_back(g.get<std::string>());
        }
      }
    }
    items.push_back(std::move(item));
  });
  ItemCatalog catalog(std::move(items), skipped);
  if (catalog.empty()) Fail(ErrorKind::kData, "empty catalog: no valid rows in " + path.string());
  return catalog;
}

void InteractionSet::Add(std::string_view user_id, std::string_view item_id,
                         std::optional<double> rating, std::optional<int64_t> timestamp) {
  auto [it, inserted] = item_index_.try_emplace(std::string(item_id),
                                                static_cast<uint32_t>(item_ids_.size()));
  if (inserted) item_ids_.emplace_back(item_id);
  auto user = users_.find(user_id);
  if (user == users_.end()) user = users_.emplace(std::string(user_id), std::vector<Entry>{}).first;
  Entry entry;
  entry.item = it->second;
  entry.rating = rating;
  entry.timestamp = timestamp;
  user->second.push_back(entry);
  ++size_;
}

Interaction InteractionSet::Materialize(std::string_view user_id, const Entry& entry) const {
  Interaction out;
  out.user_id = std::string(user_id);
  out.item_id = std::string(item_id(entry.item));
  if (entry.rating) out.rating = *entry.rating;
  out.timestamp = entry.timestamp;
  return out;
}

InteractionSet LoadInteractions(const std::filesystem::path& path, InteractionSchema schema) {
  InteractionSet set;
  ForEachLine(path, [&](std::string_view line, size_t line_number) {
    if (Trim(line).empty()) return;
    if (schema == InteractionSchema::kMl25mRatingsCsv) {
      if (line_number == 1 && line.starts_with("userId")) return;
      auto fields = internal::SplitCsvLine(line);
      if (!fields || fields->size() != 4) {
        set.CountSkipped();
        return;
      }
      std::string_view user = Trim((*fields)[0]);
      std::string_view item = Trim((*fields)[1]);
      auto rating = ParseNumber<double>((*fields)[2]);
      auto ts = ParseNumber<int64_t>((*fields)[3]);
      if (user.empty() || item.empty() || !rating || !ValidRating(*rating) || !ts) {
        set.CountSkipped();
        return;
      }
      set.Add(user, item, *rating, *ts);
      return;
    }
    auto obj = ParseObject(line);
    if (!obj) {
      set.CountSkipped();
      return;
    }
    auto user = IdField(*obj, "user_id");
    auto item = IdField(*obj, "item_id");
    if (!user || user->empty() || !item || item->empty()) {
      set.CountSkipped();
      return;
    }
    std::optional<double> rating;
    if (auto it = obj->find("rating"); it != obj->end() && !it->is_null()) {
      if (!it->is_number() || !ValidRating(it->get<double>())) {
        set.CountSkipped();
        return;
      }
      rating = it->get<double>();
    }
    std::optional<int64_t> ts;
    if (auto it = obj->find("timestamp"); it != obj->end() && !it->is_null()) {
      if (!it->is_number_integer()) {
        set.CountSkipped();
        return;
      }
      ts = it->get<int64_t>();
    }
    set.Add(*user, *item, rating, ts);
  });
  return set;
}

void ReviewSet::Add(Review review) {
  std::string key = review.item_id;
  by_item_[std::move(key)].push_back(std::move(review));
  ++size_;
}

double ReviewSet::MeanWordCount() const {
  if (size_ == 0) return 0.0;
  // Integer accumulation keeps the mean exact up to the final division.
  uint64_t words = 0;
  for (const auto& [id, reviews] : by_item_) {
    for (const Review& r : reviews) words += r.word_count;
  }
  return static_cast<double>(words) / static_cast<double>(size_);
}

ReviewSet LoadReviews(const std::filesystem::path& path, const ReviewLoadOptions& options) {
  ReviewSet set;
  std::map<std::string, size_t, std::less<>> per_item;
  ForEachLine(path, [&](std::string_view line, size_t) {
    if (Trim(line).empty()) return;
    auto obj = ParseObject(line);
    auto id = obj ? IdField(*obj, "item_id") : std::nullopt;
    auto text = obj ? StringField(*obj, "text") : std::nullopt;
    if (!id || id->empty() || !text) {
      set.CountSkipped();
      return;
    }
    size_t words = CountWords(*text);
    if (words == 0) {
      set.CountSkipped();
      return;
    }
    size_t& seen = per_item[*id];
    if (options.max_reviews_per_item > 0 && seen >= options.max_reviews_per_item) {
      set.CountCapped();
      return;
    }
    ++seen;
    set.Add(Review{std::move(*id), std::move(*text), words});
  });
  return set;
}

std::string SerializeCatalog(const ItemCatalog& catalog) {
  std::string out;
  for (const Item& item : catalog.items()) {
    json obj = {{"item_id", item.item_id},
                {"title", item.title},
                {"domain", std::string(DomainName(item.domain))},
                {"genres", item.genres}};
    out += obj.dump();
    out += '\n';
  }
  return out;
}

std::string SerializeInteractions(const InteractionSet& interactions) {
  std::string out;
  for (const auto& [user, entries] : interactions.by_user()) {
    for (const auto& entry : entries) {
      json obj = {{"user_id", user}, {"item_id", std::string(interactions.item_id(entry.item))}};
      if (entry.rating) obj["rating"] = *entry.rating;
      if (entry.timestamp) obj["timestamp"] = *entry.timestamp;
      out += obj.dump();
      out += '\n';
    }
  }
  return out;
}

std::string SerializeReviews(const ReviewSet& reviews) {
  std::string out;
  for (const auto& [id, list] : reviews.by_item()) {
    for (const Review& r : list) {
      out += json({{"item_id", r.item_id}, {"text", r.text}}).dump();
      out += '\n';
    }
  }
  return out;
}

}  // namespace crsprobe::corpus
