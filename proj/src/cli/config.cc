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

#include "crsprobe/cli/config.h"

#include <set>

#include "crsprobe/common/error.h"
#include "crsprobe/common/io.h"
#include "crsprobe/corpus/corpus.h"
#include "crsprobe/dialogue/dialogue.h"
#include "crsprobe/probegen/probes.h"
#include "crsprobe/scoring/ranking.h"

namespace crsprobe::cli {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Reads the keys of one object, rejecting any key not consumed.
class Section {
 public:
  Section(const json& doc, std::string name) : doc_(doc), name_(std::move(name)) {
    Require(doc.is_object(), ErrorKind::kConfig, name_ + " must be an object");
  }
  void Finish() const {
    for (const auto& [key, value] : doc_.items()) {
      Require(seen_.count(key) > 0, ErrorKind::kConfig,
              "unknown config key: " + name_ + "." + key);
    }
  }

  template <typename T>
  void Get(const char* key, T& out) {
    seen_.insert(key);
    auto it = doc_.find(key);
    if (it == doc_.end()) return;
    try {
      out = it->get<T>();
    } catch (const json::exception&) {
      Fail(ErrorKind::kConfig, "config key " + name_ + "." + key + " has the wrong type");
    }
  }

  const json* Child(const char* key) {
    seen_.insert(key);
    auto it = doc_.find(key);
    return it == doc_.end() ? nullptr : &*it;
  }

 private:
  const json& doc_;
  std::string name_;
  std::set<std::string> seen_;
};

std::string Resolve(const std::string& path, const std::filesystem::path& base) {
  if (path.empty() || base.empty()) return path;
  std::filesystem::path p(path);
  return p.is_absolute() ? path : (base / p).lexically_normal().string();
}

}  // namespace

RunConfig ConfigFromJson(const json& doc, const std::filesystem::path& base_dir) {
  RunConfig c;
  Section root(doc, "config");
  root.Get("seed", c.seed);
  root.Get("output_dir", c.output_dir);
  root.Get("domain", c.domain);
  if (const json* j = root.Child("inputs")) {
    Section s(*j, "inputs");
    s.Get("catalog", c.inputs.catalog);
    s.Get("catalog_schema", c.inputs.catalog_schema);
    s.Get("interactions", c.inputs.interactions);
    s.Get("interactions_schema", c.inputs.interactions_schema);
    s.Get("reviews", c.inputs.reviews);
    s.Get("max_reviews_per_item", c.inputs.max_reviews_per_item);
    s.Get("dialogues", c.inputs.dialogues);
    s.Get("corpus", c.inputs.corpus);
    s.Finish();
  }
  if (const json* j = root.Child("probes")) {
    Section s(*j, "probes");
    s.Get("task", c.probes.task);
    s.Get("template", c.probes.template_kind);
    s.Get("genre_slot", c.probes.genre_slot);
    s.Get("mask_token", c.probes.mask_token);
    s.Get("n", c.probes.n);
    s.Get("k", c.probes.k);
    s.Get("max_review_words", c.probes.max_review_words);
    s.Get("unique_users", c.probes.unique_users);
    s.Finish();
  }
  if (const json* j = root.Child("bm25")) {
    Section s(*j, "bm25");
    s.Get("k1", c.bm25.k1);
    s.Get("b", c.bm25.b);
    s.Get("k", c.bm25.k);
    s.Finish();
  }
  if (const json* j = root.Child("split")) {
    Section s(*j, "split");
    s.Get("train", c.split.train);
    s.Get("valid", c.split.valid);
    s.Get("test", c.split.test);
    s.Finish();
  }
  if (const json* j = root.Child("scorer")) {
    Section s(*j, "scorer");
    s.Get("spec", c.scorer.spec);
    s.Get("technique", c.scorer.technique);
    s.Get("batch_size", c.scorer.batch_size);
    s.Get("concurrency", c.scorer.concurrency);
    s.Get("top_k", c.scorer.top_k);
    s.Finish();
  }
  if (const json* j = root.Child("target")) {
    Section s(*j, "target");
    s.Get("mode", c.target.mode);
    s.Get("split", c.target.split);
    s.Finish();
  }
  if (const json* j = root.Child("metrics")) {
    Section s(*j, "metrics");
    s.Get("alpha", c.metrics.alpha);
    s.Get("xs", c.metrics.xs);
    s.Finish();
  }
  root.Finish();
  c.inputs.catalog = Resolve(c.inputs.catalog, base_dir);
  c.inputs.interactions = Resolve(c.inputs.interactions, base_dir);
  c.inputs.reviews = Resolve(c.inputs.reviews, base_dir);
  c.inputs.dialogues = Resolve(c.inputs.dialogues, base_dir);
  c.output_dir = Resolve(c.output_dir, base_dir);
  c.base_dir = base_dir.string();
  return c;
}

RunConfig LoadConfig(const std::filesystem::path& path) {
  const std::string text = ReadFile(path);
  json doc = json::parse(text, nullptr, false);
  Require(!doc.is_discarded(), ErrorKind::kConfig, "config is not valid JSON: " + path.string());
  return ConfigFromJson(doc, path.parent_path());
}

ordered_json ConfigToJson(const RunConfig& c) {
  ordered_json j;
  j["seed"] = c.seed;
  j["output_dir"] = c.output_dir;
  j["domain"] = c.domain;
  j["inputs"] = {{"catalog", c.inputs.catalog},
                 {"catalog_schema", c.inputs.catalog_schema},
                 {"interactions", c.inputs.interactions},
                 {"interactions_schema", c.inputs.interactions_schema},
                 {"reviews", c.inputs.reviews},
                 {"max_reviews_per_item", c.inputs.max_reviews_per_item},
                 {"dialogues", c.inputs.dialogues},
                 {"corpus", c.inputs.corpus}};
  j["probes"] = {{"task", c.probes.task},
                 {"template", c.probes.template_kind},
                 {"genre_slot", c.probes.genre_slot},
                 {"mask_token", c.probes.mask_token},
                 {"n", c.probes.n},
                 {"k", c.probes.k},
                 {"max_review_words", c.probes.max_review_words},
                 {"unique_users", c.probes.unique_users}};
  j["bm25"] = {{"k1", c.bm25.k1}, {"b", c.bm25.b}, {"k", c.bm25.k}};
  j["split"] = {{"train", c.split.train}, {"valid", c.split.valid}, {"test", c.split.test}};
  j["scorer"] = {{"spec", c.scorer.spec},
                 {"technique", c.scorer.technique},
                 {"batch_size", c.scorer.batch_size},
                 {"concurrency", c.scorer.concurrency},
                 {"top_k", c.scorer.top_k}};
  j["target"] = {{"mode", c.target.mode}, {"split", c.target.split}};
  j["metrics"] = {{"alpha", c.metrics.alpha}, {"xs", c.metrics.xs}};
  return j;
}

void ValidateConfig(const RunConfig& c) {
  auto positive = [](size_t v, const char* name) {
    Require(v > 0, ErrorKind::kConfig, std::string(name) + " must be positive");
  };
  positive(c.probes.n, "probes.n");
  positive(c.probes.k, "probes.k");
  positive(c.probes.max_review_words, "probes.max_review_words");
  positive(c.bm25.k, "bm25.k");
  positive(c.scorer.batch_size, "scorer.batch_size");
  positive(c.scorer.concurrency, "scorer.concurrency");
  positive(c.scorer.top_k, "scorer.top_k");
  Require(c.bm25.k1 >= 0.0, ErrorKind::kConfig, "bm25.k1 must be non-negative");
  Require(c.bm25.b >= 0.0 && c.bm25.b <= 1.0, ErrorKind::kConfig, "bm25.b must lie in [0, 1]");
  Require(c.metrics.alpha > 0.0 && c.metrics.alpha < 1.0, ErrorKind::kConfig,
          "metrics.alpha must lie in (0, 1)");
  for (size_t x : c.metrics.xs) positive(x, "metrics.xs");
  Require(!c.probes.mask_token.empty(), ErrorKind::kConfig, "probes.mask_token is empty");
  Require(c.probes.task == "genre" || c.probes.task == "search" ||
              c.probes.task == "recommendation" || c.probes.task == "response",
          ErrorKind::kConfig, "unknown task: " + c.probes.task);
  Require(probegen::ParseTemplateKind(c.probes.template_kind).has_value(), ErrorKind::kConfig,
          "unknown template: " + c.probes.template_kind);
  Require(probegen::ParseGenreSlot(c.probes.genre_slot).has_value(), ErrorKind::kConfig,
          "unknown genre slot: " + c.probes.genre_slot);
  Require(corpus::ParseCatalogSchema(c.inputs.catalog_schema).has_value(), ErrorKind::kConfig,
          "unknown catalog schema: " + c.inputs.catalog_schema);
  Require(corpus::ParseInteractionSchema(c.inputs.interactions_schema).has_value(),
          ErrorKind::kConfig, "unknown interaction schema: " + c.inputs.interactions_schema);
  Require(c.domain.empty() || corpus::ParseDomain(c.domain).has_value(), ErrorKind::kConfig,
          "unknown domain: " + c.domain);
  Require(c.target.mode == "bm25" || c.target.mode == "adversarial", ErrorKind::kConfig,
          "target.mode must be bm25 or adversarial");
  Require(c.target.split == "train" || c.target.split == "valid" || c.target.split == "test",
          ErrorKind::kConfig, "target.split must be train, valid or test");
  Require(!c.inputs.corpus.empty() &&
              c.inputs.corpus.find_first_of("/\\") == std::string::npos,
          ErrorKind::kConfig, "inputs.corpus must be a plain name");
  scoring::ParseTechnique(c.scorer.technique);
  Require(c.split.train > 0 && c.split.valid > 0 && c.split.test > 0, ErrorKind::kConfig,
          "split ratios must be positive");
  Require(std::abs(c.split.train + c.split.valid + c.split.test - 1.0) < 1e-9,
          ErrorKind::kConfig, "split ratios must sum to 1");
}

ordered_json DataConfigJson(const RunConfig& c) {
  ordered_json full = ConfigToJson(c);
  ordered_json data;
  data["seed"] = full["seed"];
  data["domain"] = full["domain"];
  data["inputs"] = full["inputs"];
  if (!c.base_dir.empty()) {
    const std::filesystem::path base = std::filesystem::path(c.base_dir).lexically_normal();
    for (const char* key : {"catalog", "interactions", "reviews", "dialogues"}) {
      const std::string path = data["inputs"][key];
      if (!path.empty()) {
        data["inputs"][key] = std::filesystem::path(path).lexically_relative(base).generic_string();
      }
    }
  }
  ordered_json probes = full["probes"];
  probes.erase("task");
  data["probes"] = probes;
  data["bm25"] = full["bm25"];
  data["split"] = full["split"];
  return data;
}

std::string ConfigHash(const RunConfig& c) { return HexDigest(Fnv1a64(DataConfigJson(c).dump())); }

}  // namespace crsprobe::cli
