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

#ifndef CRSPROBE_CLI_STAGES_H_
#define CRSPROBE_CLI_STAGES_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "crsprobe/cli/config.h"

namespace crsprobe::cli {

struct StageOptions {
  bool force = false;      // accept inputs generated under another config
  bool overwrite = false;  // replace artifacts whose content changed
  std::optional<std::filesystem::path> run_dir;
  std::ostream* log = nullptr;  // progress lines; null for silence
};

// Writes canonical JSONL copies of every configured input.
void Ingest(const RunConfig& config, const StageOptions& options);
// probes.<task>.jsonl for the genre, search or recommendation task.
void GenProbes(const RunConfig& config, const StageOptions& options);
// bm25.index and <corpus>.bm25.<split>.jsonl.
void GenCandidates(const RunConfig& config, const StageOptions& options);
// <corpus>.adversarial.<split>.jsonl.
void GenAdversarial(const RunConfig& config, const StageOptions& options);
// scores.<dataset>.<technique>.jsonl for the configured task.
void Probe(const RunConfig& config, const StageOptions& options);
// report.csv and per_query.jsonl over every score file of the run.
void Eval(const RunConfig& config, const StageOptions& options);
// significance.json and, when the report holds a sweep, plot.*.tsv.
void Report(const RunConfig& config, const StageOptions& options);

// Dispatches by subcommand name; throws a config error for unknown names.
void RunStage(std::string_view stage, const RunConfig& config, const StageOptions& options);

// Dataset label used in artifact names and reports.
std::string DatasetName(const RunConfig& config);

}  // namespace crsprobe::cli

#endif  // CRSPROBE_CLI_STAGES_H_
