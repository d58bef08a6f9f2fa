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
#include "crsprobe/common/io.h"
#include "crsprobe/probegen/probes.h"
#include "json.hpp"

namespace crsprobe::probegen {
namespace {

using nlohmann::json;

json ToJson(const GenreProbe& p) {
  return {{"probe_id", p.probe_id},
          {"item_id", p.item_id},
          {"domain", std::string(corpus::DomainName(p.domain))},
          {"prompt", p.prompt},
          {"gold_genres", p.gold_genres},
          {"template_kind", std::string(TemplateKindName(p.template_kind))},
          {"mask_token", p.mask_token}};
}

json ToJson(const PairProbe& p) {
  json obj = {{"probe_id", p.probe_id},
              {"task", std::string(PairTaskName(p.task))},
              {"query_sentence", p.query_sentence},
              {"candidates", p.candidates},
              {"relevant_index", p.relevant_index}};
  if (!p.user_id.empty()) obj["user_id"] = p.user_id;
  if (!p.query_item_id.empty()) obj["query_item_id"] = p.query_item_id;
  if (!p.candidate_item_ids.empty()) obj["candidate_item_ids"] = p.candidate_item_ids;
  return obj;
}

template <typename T, typename Parse>
std::vector<T> LoadJsonl(const std::filesystem::path& path, Parse parse) {
  std::vector<T> out;
  ForEachLine(path, [&](std::string_view line, size_t line_number) {
    if (line.empty()) return;
    try {
      out.push_back(parse(json::parse(line)));
    } catch (const json::exception& e) {
      Fail(ErrorKind::kData, path.string() + ":" + std::to_string(line_number) + ": " + e.what());
    }
  });
  return out;
}

}  // namespace

std::string SerializeGenreProbes(const std::vector<GenreProbe>& probes) {
  std::string out;
  for (const GenreProbe& p : probes) {
    out += ToJson(p).dump();
    out += '\n';
  }
  return out;
}

std::string SerializePairProbes(const std::vector<PairProbe>& probes) {
  std::string out;
  for (const PairProbe& p : probes) {
    out += ToJson(p).dump();
    out += '\n';
  }
  return out;
}

std::vector<GenreProbe> LoadGenreProbes(const std::filesystem::path& path) {
  return LoadJsonl<GenreProbe>(path, [&](const json& j) {
    GenreProbe p;
    p.probe_id = j.at("probe_id").get<std::string>();
    p.item_id = j.value("item_id", "");
    auto domain = corpus::ParseDomain(j.value("domain", "movie"));
    auto kind = ParseTemplateKind(j.at("template_kind").get<std::string>());
    if (!domain || !kind) Fail(ErrorKind::kData, "genre probe " + p.probe_id + ": bad enum field");
    p.domain = *domain;
    p.template_kind = *kind;
    p.prompt = j.at("prompt").get<std::string>();
    p.gold_genres = j.at("gold_genres").get<std::vector<std::string>>();
    p.mask_token = j.at("mask_token").get<std::string>();
    return p;
  });
}

std::vector<PairProbe> LoadPairProbes(const std::filesystem::path& path) {
  return LoadJsonl<PairProbe>(path, [&](const json& j) {
    PairProbe p;
    p.probe_id = j.at("probe_id").get<std::string>();
    auto task = ParsePairTask(j.at("task").get<std::string>());
    if (!task) Fail(ErrorKind::kData, "pair probe " + p.probe_id + ": unknown task");
    p.task = *task;
    p.query_sentence = j.at("query_sentence").get<std::string>();
    p.candidates = j.at("candidates").get<std::vector<std::string>>();
    p.relevant_index = j.at("relevant_index").get<size_t>();
    p.user_id = j.value("user_id", "");
    p.query_item_id = j.value("query_item_id", "");
    p.candidate_item_ids = j.value("candidate_item_ids", std::vector<std::string>{});
    ValidatePairProbe(p);
    return p;
  });
}

}  // namespace crsprobe::probegen
