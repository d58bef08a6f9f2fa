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

#include "crsprobe/common/io.h"
#include "crsprobe/common/text.h"
#include "crsprobe/dialogue/dialogue.h"
#include "json.hpp"

namespace crsprobe::dialogue {
namespace {

using nlohmann::json;

std::optional<std::vector<Mention>> ParseMentions(const json& value, size_t text_length) {
  if (!value.is_array()) return std::nullopt;
  std::vector<Mention> mentions;
  for (const json& m : value) {
    if (!m.is_object()) return std::nullopt;
    auto start = m.find("start");
    auto end = m.find("end");
    auto item = m.find("item_id");
    if (start == m.end() || end == m.end() || item == m.end()) return std::nullopt;
    if (!start->is_number_unsigned() || !end->is_number_unsigned()) return std::nullopt;
    Mention mention;
    mention.start = start->get<size_t>();
    mention.end = end->get<size_t>();
    if (item->is_string()) {
      mention.item_id = item->get<std::string>();
    } else if (item->is_number_integer()) {
      mention.item_id = item->dump();
    } else {
      return std::nullopt;
    }
    if (mention.start >= mention.end || mention.end > text_length || mention.item_id.empty()) {
      return std::nullopt;
    }
    mentions.push_back(std::move(mention));
  }
  std::sort(mentions.begin(), mentions.end(),
            [](const Mention& a, const Mention& b) { return a.start < b.start; });
  for (size_t i = 1; i < mentions.size(); ++i) {
    if (mentions[i].start < mentions[i - 1].end) return std::nullopt;  // overlap
  }
  return mentions;
}

}  // namespace

std::vector<DialogueRecord> LoadDialogues(const std::filesystem::path& path, LoadStats* stats) {
  LoadStats local;
  std::vector<DialogueRecord> records;
  ForEachLine(path, [&](std::string_view line, size_t line_number) {
    if (Trim(line).empty()) return;
    json obj = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (obj.is_discarded() || !obj.is_object()) {
      ++local.malformed;
      return;
    }
    auto context = obj.find("context");
    auto response = obj.find("response");
    if (context == obj.end() || !context->is_array() || response == obj.end() ||
        !response->is_string()) {
      ++local.malformed;
      return;
    }
    DialogueRecord record;
    for (const json& u : *context) {
      if (!u.is_string()) {
        ++local.malformed;
        return;
      }
      record.context.push_back(u.get<std::string>());
    }
    record.response = response->get<std::string>();
    if (Trim(record.response).empty()) {
      ++local.malformed;
      return;
    }
    if (record.context.empty()) {
      ++local.empty_context;
      return;
    }
    if (auto m = obj.find("mentions"); m != obj.end() && !m->is_null()) {
      auto mentions = ParseMentions(*m, Utf8Length(record.response));
      if (!mentions) {
        ++local.malformed;
        return;
      }
      record.mentions = std::move(*mentions);
    }
    if (auto ids = obj.find("context_item_ids"); ids != obj.end() && ids->is_array()) {
      for (const json& id : *ids) {
        if (id.is_string()) record.context_item_ids.push_back(id.get<std::string>());
        if (id.is_number_integer()) record.context_item_ids.push_back(id.dump());
      }
    }
    if (auto id = obj.find("dialogue_id"); id != obj.end() && id->is_string()) {
      record.dialogue_id = id->get<std::string>();
    } else if (id != obj.end() && id->is_number_integer()) {
      record.dialogue_id = id->dump();
    } else {
      record.dialogue_id = "d" + std::to_string(line_number);
    }
    record.record_index = records.size();
    records.push_back(std::move(record));
  });
  if (stats) *stats = local;
  return records;
}

std::string SerializeDialogues(const std::vector<DialogueRecord>& records) {
  std::string out;
  for (const DialogueRecord& r : records) {
    json mentions = json::array();
    for (const Mention& m : r.mentions) {
      mentions.push_back({{"start", m.start}, {"end", m.end}, {"item_id", m.item_id}});
    }
    json obj = {{"dialogue_id", r.dialogue_id},
                {"context", r.context},
                {"response", r.response},
                {"mentions", mentions}};
    if (!r.context_item_ids.empty()) obj["context_item_ids"] = r.context_item_ids;
    out += obj.dump();
    out += '\n';
  }
  return out;
}

}  // namespace crsprobe::dialogue
