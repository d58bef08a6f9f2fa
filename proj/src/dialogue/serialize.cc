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
#include "crsprobe/dialogue/dialogue.h"
#include "json.hpp"

namespace crsprobe::dialogue {

using nlohmann::json;

std::string_view CandidateModeName(CandidateMode mode) {
  return mode == CandidateMode::kBm25 ? "bm25" : "adversarial";
}

size_t RelevantIndex(const DialogueExample& example) {
  for (size_t i = 0; i < example.labels.size(); ++i) {
    if (example.labels[i] == 1) return i;
  }
  Fail(ErrorKind::kPrecondition, "example " + example.example_id + " has no relevant label");
}

void ValidateExample(const DialogueExample& example, size_t k) {
  const std::string& id = example.example_id;
  Require(example.candidates.size() == example.labels.size(), ErrorKind::kPrecondition,
          "example " + id + ": candidates and labels differ in length");
  Require(k == 0 || example.candidates.size() == k, ErrorKind::kPrecondition,
          "example " + id + ": expected " + std::to_string(k) + " candidates");
  int positives = 0;
  for (int label : example.labels) {
    Require(label == 0 || label == 1, ErrorKind::kPrecondition,
            "example " + id + ": labels must be binary");
    positives += label;
  }
  Require(positives == 1, ErrorKind::kPrecondition,
          "example " + id + ": exactly one label must be set");
}

std::string SerializeExamples(const std::vector<DialogueExample>& examples) {
  std::string out;
  for (const DialogueExample& e : examples) {
    json mentions = json::array();
    for (const CandidateMention& m : e.mentions) {
      mentions.push_back({{"candidate_index", m.candidate_index},
                          {"start", m.start},
                          {"end", m.end},
                          {"item_id", m.item_id}});
    }
    json obj = {{"example_id", e.example_id}, {"dialogue_id", e.dialogue_id},
                {"context", e.context},       {"candidates", e.candidates},
                {"labels", e.labels},         {"mentions", mentions}};
    out += obj.dump();
    out += '\n';
  }
  return out;
}

std::vector<DialogueExample> LoadExamples(const std::filesystem::path& path) {
  std::vector<DialogueExample> out;
  ForEachLine(path, [&](std::string_view line, size_t line_number) {
    if (line.empty()) return;
    try {
      json j = json::parse(line);
      DialogueExample e;
      e.example_id = j.at("example_id").get<std::string>();
      e.dialogue_id = j.at("dialogue_id").get<std::string>();
      e.context = j.at("context").get<std::vector<std::string>>();
      e.candidates = j.at("candidates").get<std::vector<std::string>>();
      e.labels = j.at("labels").get<std::vector<int>>();
      for (const json& m : j.value("mentions", json::array())) {
        e.mentions.push_back({m.at("candidate_index").get<size_t>(), m.at("start").get<size_t>(),
                              m.at("end").get<size_t>(), m.at("item_id").get<std::string>()});
      }
      ValidateExample(e);
      out.push_back(std::move(e));
    } catch (const json::exception& e) {
      Fail(ErrorKind::kData, path.string() + ":" + std::to_string(line_number) + ": " + e.what());
    }
  });
  return out;
}

}  // namespace crsprobe::dialogue
