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

#include "crsprobe/cli/artifacts.h"

#include <algorithm>

#include "crsprobe/common/error.h"
#include "crsprobe/common/io.h"

namespace crsprobe::cli {

using nlohmann::json;
using nlohmann::ordered_json;

RunDir::RunDir(std::filesystem::path dir, std::string config_hash, uint64_t seed,
               bool overwrite)
    : dir_(std::move(dir)), config_hash_(std::move(config_hash)), seed_(seed),
      overwrite_(overwrite) {}

RunDir RunDir::ForConfig(const RunConfig& config,
                         const std::optional<std::filesystem::path>& run_dir, bool overwrite) {
  const std::string hash = ConfigHash(config);
  std::filesystem::path dir =
      run_dir ? *run_dir : std::filesystem::path(config.output_dir) / hash;
  return RunDir(std::move(dir), hash, config.seed, overwrite);
}

bool RunDir::Exists(std::string_view name) const {
  return std::filesystem::exists(Path(name));
}

void RunDir::Write(std::string_view name, std::string_view content, std::string_view stage,
                   const ordered_json& extra) const {
  ordered_json meta;
  meta["artifact"] = name;
  meta["stage"] = stage;
  meta["config_hash"] = config_hash_;
  meta["seed"] = seed_;
  meta["digest"] = HexDigest(Fnv1a64(content));
  for (const auto& [key, value] : extra.items()) meta[key] = value;
  WriteArtifact(Path(name), content, overwrite_);
  WriteArtifact(Path(std::string(name) + kMetaSuffix), meta.dump(2) + "\n", overwrite_);
}

json RunDir::ReadMeta(std::string_view name) const {
  Require(Exists(name), ErrorKind::kData, "missing artifact: " + Path(name).string());
  const auto meta_path = Path(std::string(name) + kMetaSuffix);
  Require(std::filesystem::exists(meta_path), ErrorKind::kData,
          "missing artifact metadata: " + meta_path.string());
  json meta = json::parse(ReadFile(meta_path), nullptr, false);
  Require(meta.is_object() && meta.contains("config_hash") && meta.contains("digest"),
          ErrorKind::kData, "malformed artifact metadata: " + meta_path.string());
  return meta;
}

json RunDir::CheckProvenance(std::string_view name, bool force) const {
  json meta = ReadMeta(name);
  const std::string recorded = meta["config_hash"].get<std::string>();
  Require(force || recorded == config_hash_, ErrorKind::kConfig,
          std::string(name) + " was generated under config hash " + recorded +
              ", current config hash is " + config_hash_ + " (use --force to accept)");
  Require(HexDigest(Fnv1a64(ReadFile(Path(name)))) == meta["digest"].get<std::string>(),
          ErrorKind::kData, std::string(name) + " does not match its recorded digest");
  return meta;
}

std::vector<std::string> RunDir::List(std::string_view prefix, std::string_view suffix) const {
  std::vector<std::string> out;
  if (!std::filesystem::is_directory(dir_)) return out;
  for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
    const std::string name = entry.path().filename().string();
    if (name.ends_with(kMetaSuffix)) continue;
    if (name.starts_with(prefix) && name.ends_with(suffix)) out.push_back(name);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace crsprobe::cli
