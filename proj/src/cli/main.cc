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

#include "crsprobe/cli/main.h"

#include <CLI11.hpp>
#include <json.hpp>
#include <ostream>

#include "crsprobe/cli/artifacts.h"
#include "crsprobe/cli/config.h"
#include "crsprobe/cli/stages.h"
#include "crsprobe/common/error.h"

namespace crsprobe::cli {
namespace {

int ExitCode(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig:
      return kExitConfig;
    case ErrorKind::kData:
    case ErrorKind::kPrecondition:
    case ErrorKind::kLookup:
      return kExitData;
    case ErrorKind::kTransport:
      return kExitTransport;
  }
  return kExitInternal;
}

int Report(std::ostream& err, const std::string& stage, std::string_view kind, int code,
           const std::string& message) {
  nlohmann::ordered_json record;
  record["error"] = {{"kind", kind}, {"exit_code", code}, {"stage", stage},
                     {"message", message}};
  err << record.dump() << "\n";
  return code;
}

// Flag values that override the config file when given.
struct Overrides {
  std::optional<uint64_t> seed;
  std::optional<std::string> output_dir, domain, task, template_kind, genre_slot, mask_token;
  std::optional<size_t> n, k, max_review_words, bm25_k, batch_size, concurrency, top_k;
  std::optional<double> bm25_k1, bm25_b, alpha;
  std::optional<std::string> scorer, technique, mode, split;
  std::optional<std::vector<size_t>> xs;
  bool unique_users = false;
};

template <typename T, typename U>
void Apply(const std::optional<T>& value, U& target) {
  if (value) target = *value;
}

void ApplyOverrides(const Overrides& o, RunConfig& c) {
  Apply(o.seed, c.seed);
  Apply(o.output_dir, c.output_dir);
  Apply(o.domain, c.domain);
  Apply(o.task, c.probes.task);
  Apply(o.template_kind, c.probes.template_kind);
  Apply(o.genre_slot, c.probes.genre_slot);
  Apply(o.mask_token, c.probes.mask_token);
  Apply(o.n, c.probes.n);
  Apply(o.k, c.probes.k);
  Apply(o.max_review_words, c.probes.max_review_words);
  if (o.unique_users) c.probes.unique_users = true;
  Apply(o.bm25_k1, c.bm25.k1);
  Apply(o.bm25_b, c.bm25.b);
  Apply(o.bm25_k, c.bm25.k);
  Apply(o.scorer, c.scorer.spec);
  Apply(o.technique, c.scorer.technique);
  Apply(o.batch_size, c.scorer.batch_size);
  Apply(o.concurrency, c.scorer.concurrency);
  Apply(o.top_k, c.scorer.top_k);
  Apply(o.mode, c.target.mode);
  Apply(o.split, c.target.split);
  Apply(o.alpha, c.metrics.alpha);
  Apply(o.xs, c.metrics.xs);
}

}  // namespace

int Main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Knowledge probes and response-ranking benchmarks for language models",
               "crsprobe"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string config_path;
  std::string run_dir;
  Overrides o;
  StageOptions options;
  bool quiet = false;

  app.add_option("-c,--config", config_path, "JSON run configuration");
  app.add_option("--run-dir", run_dir, "Use this directory instead of <output_dir>/<hash>");
  app.add_flag("--force", options.force, "Accept inputs generated under another config");
  app.add_flag("--overwrite", options.overwrite, "Replace artifacts whose content changed");
  app.add_flag("-q,--quiet", quiet, "No progress output");
  app.add_option("--seed", o.seed, "Run seed");
  app.add_option("--output-dir", o.output_dir, "Root of versioned run directories");
  app.add_option("--domain", o.domain, "Restrict the catalog to book, movie or music");
  app.add_option("--task", o.task, "genre, search, recommendation or response");
  app.add_option("--template", o.template_kind, "tp-notitle, tp-title or tp-titlegenre");
  app.add_option("--genre-slot", o.genre_slot, "mask-before-genre or mask-after-genre");
  app.add_option("--mask-token", o.mask_token, "Mask placeholder written into prompts");
  app.add_option("--n", o.n, "Number of probes");
  app.add_option("--k", o.k, "Candidates per pair probe");
  app.add_option("--max-review-words", o.max_review_words, "Search query length cap");
  app.add_flag("--unique-users", o.unique_users, "At most one recommendation probe per user");
  app.add_option("--bm25-k1", o.bm25_k1, "BM25 k1");
  app.add_option("--bm25-b", o.bm25_b, "BM25 b");
  app.add_option("--bm25-k", o.bm25_k, "Candidates per dialogue example");
  app.add_option("--scorer", o.scorer, "mock:uniform:<seed>, mock:hash, mock:oracle or URL");
  app.add_option("--technique", o.technique, "sim-cls, sim-mean or nsp");
  app.add_option("--batch-size", o.batch_size, "Items per scorer request");
  app.add_option("--concurrency", o.concurrency, "Scorer batches in flight");
  app.add_option("--top-k", o.top_k, "Tokens kept per masked prediction");
  app.add_option("--mode", o.mode, "Candidate set scored by the response task");
  app.add_option("--split", o.split, "Split scored by the response task");
  app.add_option("--alpha", o.alpha, "Significance level");
  app.add_option("--xs", o.xs, "Candidate counts for the R_x@1 sweep")->delimiter(',');

  const std::vector<std::pair<std::string, std::string>> stages = {
      {"ingest", "Normalize inputs into canonical JSONL"},
      {"gen-probes", "Generate genre, search or recommendation probes"},
      {"gen-candidates", "Build the BM25 index and candidate sets"},
      {"gen-adversarial", "Build adversarial candidate sets"},
      {"probe", "Score a dataset with the configured scorer"},
      {"eval", "Compute metrics over every score file"},
      {"report", "Significance tests and plot data"},
      {"show-config", "Print the effective configuration and its hash"},
  };
  for (const auto& [name, help] : stages) app.add_subcommand(name, help);

  std::string stage;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    app.parse(reversed);
    stage = app.get_subcommands().front()->get_name();

    RunConfig config = config_path.empty() ? RunConfig{} : LoadConfig(config_path);
    ApplyOverrides(o, config);
    if (!run_dir.empty()) options.run_dir = run_dir;
    options.log = quiet ? nullptr : &out;
    if (stage == "show-config") {
      ValidateConfig(config);
      nlohmann::ordered_json doc;
      doc["config_hash"] = ConfigHash(config);
      doc["run_dir"] = RunDir::ForConfig(config, options.run_dir).dir().string();
      doc["config"] = ConfigToJson(config);
      out << doc.dump(2) << "\n";
      return kExitOk;
    }
    RunStage(stage, config, options);
    return kExitOk;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return Report(err, stage, "config", kExitConfig, e.what());
  } catch (const Error& e) {
    return Report(err, stage, ErrorKindName(e.kind()), ExitCode(e.kind()), e.what());
  } catch (const std::exception& e) {
    return Report(err, stage, "internal", kExitInternal, e.what());
  }
}

}  // namespace crsprobe::cli
