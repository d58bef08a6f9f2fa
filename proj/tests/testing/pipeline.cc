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

#include "testing/pipeline.h"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "crsprobe/cli/main.h"
#include "testing/synthetic.h"

namespace crsprobe::testing {

CliResult RunCli(const std::vector<std::string>& args) {
  std::vector<std::string> full = {"crsprobe"};
  full.insert(full.end(), args.begin(), args.end());
  std::ostringstream out, err;
  CliResult r;
  r.code = cli::Main(full, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path WriteFixture(const std::filesystem::path& dir,
                                   const FixtureOptions& options) {
  std::filesystem::create_directories(dir);
  WriteCorpus(MakeCorpus(options.seed, options.items, options.users, options.dialogues), dir);
  nlohmann::json config = {
      {"seed", options.seed},
      {"output_dir", "runs"},
      {"inputs",
       {{"catalog", "catalog.jsonl"},
        {"interactions", "interactions.jsonl"},
        {"reviews", "reviews.jsonl"},
        {"dialogues", "dialogues.jsonl"},
        {"corpus", "toy"}}},
      {"probes", {{"n", options.n}, {"k", options.k}}},
      {"scorer", {{"spec", options.scorer}}},
      {"metrics", {{"xs", options.xs}}}};
  const auto path = dir / "config.json";
  WriteText(path, config.dump(2) + "\n");
  return path;
}

std::vector<std::vector<std::string>> PipelineCommands() {
  return {{"ingest"},
          {"gen-probes", "--task", "search"},
          {"gen-probes", "--task", "recommendation"},
          {"gen-probes", "--task", "genre"},
          {"gen-candidates"},
          {"gen-adversarial"},
          {"probe", "--task", "search", "--technique", "nsp"},
          {"probe", "--task", "search", "--technique", "sim-cls"},
          {"probe", "--task", "recommendation", "--technique", "sim-mean"},
          {"probe", "--task", "genre"},
          {"probe", "--task", "response", "--mode", "bm25"},
          {"probe", "--task", "response", "--mode", "adversarial"},
          {"eval"},
          {"report"}};
}

std::string RunPipeline(const std::filesystem::path& config, const std::vector<std::string>& extra) {
  for (const auto& command : PipelineCommands()) {
    std::vector<std::string> args = {"-c", config.string(), "-q"};
    args.insert(args.end(), extra.begin(), extra.end());
    args.insert(args.end(), command.begin(), command.end());
    CliResult r = RunCli(args);
    if (r.code != 0) {
      std::string joined;
      for (const auto& a : command) joined += a + " ";
      return joined + "exited " + std::to_string(r.code) + ": " + r.err;
    }
  }
  return "";
}

std::map<std::string, std::string> ReadTree(const std::filesystem::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream bytes;
    bytes << in.rdbuf();
    out[std::filesystem::relative(entry.path(), root).string()] = bytes.str();
  }
  return out;
}

}  // namespace crsprobe::testing
