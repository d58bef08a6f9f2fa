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

#include "crsprobe/common/text.h"
#include "crsprobe/probegen/probes.h"

namespace crsprobe::probegen {

std::string StripTitle(std::string_view review_text, std::string_view title) {
  std::vector<std::string> variants;
  std::string full = CollapseSpaces(title);
  if (full.empty()) return CollapseSpaces(review_text);
  if (full.back() == ')') {
    size_t open = full.rfind('(');
    if (open != std::string::npos) {
      std::string bare(Trim(std::string_view(full).substr(0, open)));
      if (!bare.empty()) variants.push_back(std::move(bare));
    }
  }
  variants.insert(variants.begin(), std::move(full));

  std::string out = CollapseSpaces(review_text);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const std::string& v : variants) {
      size_t pos = FindIgnoreCase(out, v);
      while (pos != std::string::npos) {
        out.erase(pos, v.size());
        changed = true;
        pos = FindIgnoreCase(out, v, pos);
      }
    }
    // Collapsing can join fragments into a fresh occurrence; loop again.
    out = CollapseSpaces(out);
  }
  return out;
}

}  // namespace crsprobe::probegen
