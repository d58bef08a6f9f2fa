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

#include <numeric>

#include "crsprobe/common/error.h"
#include "crsprobe/common/rng.h"
#include "crsprobe/probegen/probes.h"

namespace crsprobe::probegen {

std::vector<GenreProbe> BuildGenreProbes(const corpus::ItemCatalog& catalog,
                                         const GenreProbeOptions& options) {
  std::vector<const corpus::Item*> eligible;
  for (const corpus::Item& item : catalog.items()) {
    if (!item.genres.empty()) eligible.push_back(&item);
  }
  Require(!eligible.empty(), ErrorKind::kData, "genre probes: no item has a genre label");

  Rng rng(DeriveSeed(options.seed, "genre-sample"));
  rng.Shuffle(std::span(eligible));
  const size_t count = std::min(options.n, eligible.size());

  std::vector<GenreProbe> probes;
  probes.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    const corpus::Item& item = *eligible[i];
    GenreProbe probe;
    probe.probe_id = "genre-" + std::to_string(i);
    probe.item_id = item.item_id;
    probe.domain = item.domain;
    probe.prompt = RenderGenrePrompt(&item, item.domain, options.kind, options.mask_token,
                                     options.slot);
    probe.gold_genres = item.genres;
    probe.template_kind = options.kind;
    probe.mask_token = options.mask_token;
    probes.push_back(std::move(probe));
  }
  return probes;
}

}  // namespace crsprobe::probegen
