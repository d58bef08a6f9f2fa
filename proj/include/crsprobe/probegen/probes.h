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

#ifndef CRSPROBE_PROBEGEN_PROBES_H_
#define CRSPROBE_PROBEGEN_PROBES_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crsprobe/corpus/corpus.h"

namespace crsprobe::probegen {

enum class TemplateKind { kNoTitle, kTitle, kTitleGenre };

// "TP_NOTITLE", "TP_TITLE", "TP_TITLEGENRE".
std::string_view TemplateKindName(TemplateKind kind);
// Accepts the canonical names and the CLI spellings tp-notitle etc.
std::optional<TemplateKind> ParseTemplateKind(std::string_view name);

// Where the mask sits relative to the word "genre" in the NoTitle and
// TitleGenre templates: "of the [MASK] genre." or "of the genre [MASK]."
enum class GenreSlot { kMaskBeforeGenre, kMaskAfterGenre };
std::optional<GenreSlot> ParseGenreSlot(std::string_view name);

// "book", "movie" or "music album".
std::string_view DomainNoun(corpus::Domain domain);

// item may be null only for TemplateKind::kNoTitle; titled templates throw a
// precondition error without an item title.
std::string RenderGenrePrompt(const corpus::Item* item, corpus::Domain domain,
                              TemplateKind kind, std::string_view mask_token,
                              GenreSlot slot = GenreSlot::kMaskBeforeGenre);

struct GenreProbe {
  std::string probe_id;
  std::string item_id;
  corpus::Domain domain = corpus::Domain::kMovie;
  std::string prompt;
  std::vector<std::string> gold_genres;
  TemplateKind template_kind = TemplateKind::kTitleGenre;
  std::string mask_token;
};

struct GenreProbeOptions {
  size_t n = 100000;
  TemplateKind kind = TemplateKind::kTitleGenre;
  uint64_t seed = 0;
  std::string mask_token = "[MASK]";
  GenreSlot slot = GenreSlot::kMaskBeforeGenre;
};

// Samples min(n, eligible) items with at least one genre, without
// replacement. Throws a data error when no item is eligible.
std::vector<GenreProbe> BuildGenreProbes(const corpus::ItemCatalog& catalog,
                                         const GenreProbeOptions& options);

struct RecPrompt {
  std::string query;     // "If you liked {liked},"
  std::string document;  // "you will also like {candidate}"
};

RecPrompt RenderRecPrompt(std::string_view liked_title, std::string_view candidate_title);

// Case-insensitive removal of every occurrence of title and of title without
// its trailing parenthetical (e.g. a release year). Whitespace is collapsed
// and removal repeats until neither variant occurs.
std::string StripTitle(std::string_view review_text, std::string_view title);

enum class PairTask { kRecommendation, kSearch };
std::string_view PairTaskName(PairTask task);
std::optional<PairTask> ParsePairTask(std::string_view name);

struct PairProbe {
  std::string probe_id;
  PairTask task = PairTask::kRecommendation;
  std::string query_sentence;
  std::vector<std::string> candidates;
  size_t relevant_index = 0;
  // Provenance used to replay invariants against the source corpus.
  std::string user_id;        // recommendation only
  std::string query_item_id;
  std::vector<std::string> candidate_item_ids;
};

// Throws a precondition error unless the probe has k >= 2 distinct
// candidates and a relevant index in range.
void ValidatePairProbe(const PairProbe& probe);

struct BuildStats {
  size_t skipped = 0;            // probes or sources dropped as degenerate
  size_t unresolved = 0;         // rows whose item is not in the catalog
};

struct RecommendationProbeOptions {
  size_t n = 100000;
  size_t k = 2;
  uint64_t seed = 0;
  // Each user contributes at most one probe; n is capped at the number of
  // eligible users.
  bool unique_users = false;
};

std::vector<PairProbe> BuildRecommendationProbes(
    const corpus::InteractionSet& interactions, const corpus::ItemCatalog& catalog,
    const corpus::PopularityTable& popularity, const RecommendationProbeOptions& options,
    BuildStats* stats = nullptr);

struct SearchProbeOptions {
  size_t n = 100000;
  size_t k = 2;
  uint64_t seed = 0;
  size_t max_review_words = 256;
};

std::vector<PairProbe> BuildSearchProbes(const corpus::ReviewSet& reviews,
                                         const corpus::ItemCatalog& catalog,
                                         const SearchProbeOptions& options,
                                         BuildStats* stats = nullptr);

// JSONL, one probe per line.
std::string SerializeGenreProbes(const std::vector<GenreProbe>& probes);
std::string SerializePairProbes(const std::vector<PairProbe>& probes);
std::vector<GenreProbe> LoadGenreProbes(const std::filesystem::path& path);
std::vector<PairProbe> LoadPairProbes(const std::filesystem::path& path);

}  // namespace crsprobe::probegen

#endif  // CRSPROBE_PROBEGEN_PROBES_H_
