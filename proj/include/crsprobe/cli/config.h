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

#ifndef CRSPROBE_CLI_CONFIG_H_
#define CRSPROBE_CLI_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace crsprobe::cli {

struct InputConfig {
  std::string catalog;
  std::string catalog_schema = "canonical_jsonl";
  std::string interactions;
  std::string interactions_schema = "canonical_jsonl";
  std::string reviews;
  size_t max_reviews_per_item = 0;  // 0 keeps every review
  std::string dialogues;
  std::string corpus = "dialogues";  // file name prefix for candidate sets
};

struct ProbeConfig {
  std::string task = "search";  // genre | search | recommendation | response
  std::string template_kind = "tp-titlegenre";
  std::string genre_slot = "mask-before-genre";
  std::string mask_token = "[MASK]";
  size_t n = 1000;
  size_t k = 2;
  size_t max_review_words = 256;
  bool unique_users = false;
};

struct Bm25Config {
  double k1 = 1.2;
  double b = 0.75;
  size_t k = 50;
};

struct SplitConfig {
  double train = 0.8;
  double valid = 0.1;
  double test = 0.1;
};

struct ScorerConfig {
  std::string spec = "mock:uniform:0";
  std::string technique = "nsp";  // sim-cls | sim-mean | nsp
  size_t batch_size = 32;
  size_t concurrency = 1;
  size_t top_k = 5;
};

// Which candidate set the response task scores.
struct TargetConfig {
  std::string mode = "bm25";  // bm25 | adversarial
  std::string split = "test";
};

struct MetricConfig {
  double alpha = 0.05;
  std::vector<size_t> xs;  // candidate sweep; empty for none
};

struct RunConfig {
  uint64_t seed = 0;
  std::string output_dir = "runs";
  std::string domain;  // restricts the catalog when set
  InputConfig inputs;
  ProbeConfig probes;
  Bm25Config bm25;
  SplitConfig split;
  ScorerConfig scorer;
  TargetConfig target;
  MetricConfig metrics;
  // Directory relative input paths were resolved against; empty when the
  // config did not come from a file.
  std::string base_dir;
};

// Unknown keys are config errors. Relative input paths are resolved against
// base_dir.
RunConfig ConfigFromJson(const nlohmann::json& doc,
                         const std::filesystem::path& base_dir = {});
RunConfig LoadConfig(const std::filesystem::path& path);
nlohmann::ordered_json ConfigToJson(const RunConfig& config);

// Throws a config error unless every count is positive, alpha lies in (0, 1)
// and every enumerated setting parses.
void ValidateConfig(const RunConfig& config);

// The settings that shape generated data: seed, inputs, domain, probe
// generation, bm25 and split. Input paths appear relative to base_dir so a
// copied config and corpus hash the same wherever they live.
nlohmann::ordered_json DataConfigJson(const RunConfig& config);

// Hex digest of DataConfigJson. Scorer, target, metric and output settings
// do not affect it.
std::string ConfigHash(const RunConfig& config);

}  // namespace crsprobe::cli

#endif  // CRSPROBE_CLI_CONFIG_H_
