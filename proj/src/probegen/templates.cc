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

#include "crsprobe/common/error.h"
#include "crsprobe/probegen/probes.h"

namespace crsprobe::probegen {

std::string_view TemplateKindName(TemplateKind kind) {
  switch (kind) {
    case TemplateKind::kNoTitle:
      return "TP_NOTITLE";
    case TemplateKind::kTitle:
      return "TP_TITLE";
    case TemplateKind::kTitleGenre:
      return "TP_TITLEGENRE";
  }
  return "TP_TITLEGENRE";
}

std::optional<TemplateKind> ParseTemplateKind(std::string_view name) {
  if (name == "TP_NOTITLE" || name == "tp-notitle") return TemplateKind::kNoTitle;
  if (name == "TP_TITLE" || name == "tp-title") return TemplateKind::kTitle;
  if (name == "TP_TITLEGENRE" || name == "tp-titlegenre") return TemplateKind::kTitleGenre;
  return std::nullopt;
}

std::optional<GenreSlot> ParseGenreSlot(std::string_view name) {
  if (name == "mask-before-genre") return GenreSlot::kMaskBeforeGenre;
  if (name == "mask-after-genre") return GenreSlot::kMaskAfterGenre;
  return std::nullopt;
}

std::string_view DomainNoun(corpus::Domain domain) {
  switch (domain) {
    case corpus::Domain::kBook:
      return "book";
    case corpus::Domain::kMovie:
      return "movie";
    case corpus::Domain::kMusic:
      return "music album";
  }
  return "movie";
}

std::string RenderGenrePrompt(const corpus::Item* item, corpus::Domain domain,
                              TemplateKind kind, std::string_view mask_token,
                              GenreSlot slot) {
  const std::string noun(DomainNoun(domain));
  const std::string mask(mask_token);
  const std::string genre_phrase = slot == GenreSlot::kMaskBeforeGenre
                                       ? "of the " + mask + " genre."
                                       : "of the genre " + mask + ".";
  if (kind == TemplateKind::kNoTitle) return "It is a " + noun + " " + genre_phrase;

  Require(item != nullptr && !item->title.empty(), ErrorKind::kPrecondition,
          std::string(TemplateKindName(kind)) + " requires an item title");
  if (kind == TemplateKind::kTitle) return item->title + " is a " + mask + " " + noun + ".";
  return item->title + " is a " + noun + " " + genre_phrase;
}

RecPrompt RenderRecPrompt(std::string_view liked_title, std::string_view candidate_title) {
  Require(!liked_title.empty() && !candidate_title.empty(), ErrorKind::kPrecondition,
          "recommendation prompt needs two non-empty titles");
  return RecPrompt{"If you liked " + std::string(liked_title) + ",",
                   "you will also like " + std::string(candidate_title)};
}

std::string_view PairTaskName(PairTask task) {
  return task == PairTask::kRecommendation ? "recommendation" : "search";
}

std::optional<PairTask> ParsePairTask(std::string_view name) {
  if (name == "recommendation" || name == "rec") return PairTask::kRecommendation;
  if (name == "search") return PairTask::kSearch;
  return std::nullopt;
}

}  // namespace crsprobe::probegen
