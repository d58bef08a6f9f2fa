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

#ifndef CRSPROBE_CLI_ARTIFACTS_H_
#define CRSPROBE_CLI_ARTIFACTS_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "crsprobe/cli/config.h"

namespace crsprobe::cli {

// Versioned, append-only artifact directory <output_dir>/<config hash>/.
// Each artifact gets a sidecar <name>.meta.json recording the config hash,
// seed, producing stage and a content digest.
class RunDir {
 public:
  RunDir(std::filesystem::path dir, std::string config_hash, uint64_t seed,
         bool overwrite = false);

  // Uses run_dir when given, else <output_dir>/<hash>.
  static RunDir ForConfig(const RunConfig& config,
                          const std::optional<std::filesystem::path>& run_dir = std::nullopt,
                          bool overwrite = false);

  const std::filesystem::path& dir() const { return dir_; }
  const std::string& config_hash() const { return config_hash_; }
  std::filesystem::path Path(std::string_view name) const { return dir_ / std::string(name); }
  bool Exists(std::string_view name) const;

  // Writes the artifact and its sidecar. extra is merged into the sidecar.
  void Write(std::string_view name, std::string_view content, std::string_view stage,
             const nlohmann::ordered_json& extra = nlohmann::ordered_json::object()) const;

  // Data error when the artifact or its sidecar is missing.
  nlohmann::json ReadMeta(std::string_view name) const;

  // Throws a config error when the artifact was produced under a different
  // config (unless force), and a data error when its content no longer
  // matches the recorded digest.
  nlohmann::json CheckProvenance(std::string_view name, bool force) const;

  // Names of artifacts starting with prefix and ending with suffix, sorted.
  std::vector<std::string> List(std::string_view prefix, std::string_view suffix) const;

 private:
  std::filesystem::path dir_;
  std::string config_hash_;
  uint64_t seed_;
  bool overwrite_;
};

inline constexpr char kMetaSuffix[] = ".meta.json";

}  // namespace crsprobe::cli

#endif  // CRSPROBE_CLI_ARTIFACTS_H_
