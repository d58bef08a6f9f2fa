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

#include "crsprobe/cli/stages.h"

#include <ostream>

#include "crsprobe/cli/artifacts.h"
#include "crsprobe/common/error.h"
#include "crsprobe/common/io.h"
#include "crsprobe/corpus/corpus.h"
#include "crsprobe/dialogue/dialogue.h"
#include "crsprobe/metrics/metrics.h"
#include "crsprobe/metrics/report.h"
#include "crsprobe/metrics/sweep.h"
#include "crsprobe/probegen/probes.h"
#include "crsprobe/scoring/factory.h"
#include "crsprobe/scoring/mock_scorer.h"
#include "crsprobe/scoring/ranking.h"

namespace crsprobe::cli {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr const char* kSplitNames[] = {"train", "valid", "test"};

void Log(const StageOptions& options, const std::string& line) {
  if (options.log != nullptr) *options.log << line << "\n";
}

RunDir OpenRun(const RunConfig& config, const StageOptions& options) {
  ValidateConfig(config);
  return RunDir::ForConfig(config, options.run_dir, options.overwrite);
}

const std::string& RequireInput(const std::string& path, const char* key) {
  Require(!path.empty(), ErrorKind::kConfig, std::string("inputs.") + key + " is not set");
  return path;
}

corpus::ItemCatalog IngestCatalog(const RunConfig& config) {
  corpus::ItemCatalog catalog =
      corpus::LoadCatalog(RequireInput(config.inputs.catalog, "catalog"),
                          *corpus::ParseCatalogSchema(config.inputs.catalog_schema));
  if (config.domain.empty()) return catalog;
  const corpus::Domain domain = *corpus::ParseDomain(config.domain);
  std::vector<corpus::Item> kept;
  for (const corpus::Item& item : catalog.items()) {
    if (item.domain == domain) kept.push_back(item);
  }
  Require(!kept.empty(), ErrorKind::kData, "catalog has no " + config.domain + " items");
  return corpus::ItemCatalog(std::move(kept), catalog.skipped());
}

corpus::ReviewSet IngestReviews(const RunConfig& config) {
  corpus::ReviewLoadOptions options;
  options.max_reviews_per_item = config.inputs.max_reviews_per_item;
  return corpus::LoadReviews(RequireInput(config.inputs.reviews, "reviews"), options);
}

corpus::InteractionSet IngestInteractions(const RunConfig& config) {
  return corpus::LoadInteractions(
      RequireInput(config.inputs.interactions, "interactions"),
      *corpus::ParseInteractionSchema(config.inputs.interactions_schema));
}

std::vector<dialogue::DialogueRecord> IngestDialogues(const RunConfig& config,
                                                     dialogue::LoadStats* stats) {
  auto records = dialogue::LoadDialogues(RequireInput(config.inputs.dialogues, "dialogues"), stats);
  Require(!records.empty(), ErrorKind::kData, "no usable dialogue records");
  return records;
}

// Downstream stages read the canonical copies written by ingest, after
// checking that they belong to this configuration and are intact.
std::filesystem::path Ingested(const RunDir& run, const char* name, const StageOptions& options) {
  run.CheckProvenance(name, options.force);
  return run.Path(name);
}

corpus::ItemCatalog CatalogArtifact(const RunDir& run, const StageOptions& options) {
  return corpus::LoadCatalog(Ingested(run, "catalog.jsonl", options),
                             corpus::CatalogSchema::kCanonicalJsonl);
}

corpus::ReviewSet ReviewsArtifact(const RunDir& run, const StageOptions& options) {
  return corpus::LoadReviews(Ingested(run, "reviews.jsonl", options));
}

corpus::InteractionSet InteractionsArtifact(const RunDir& run, const StageOptions& options) {
  return corpus::LoadInteractions(Ingested(run, "interactions.jsonl", options),
                                  corpus::InteractionSchema::kCanonicalJsonl);
}

std::vector<dialogue::DialogueRecord> DialoguesArtifact(const RunDir& run,
                                                       const StageOptions& options) {
  auto records = dialogue::LoadDialogues(Ingested(run, "dialogues.jsonl", options));
  Require(!records.empty(), ErrorKind::kData, "no usable dialogue records");
  return records;
}

std::array<std::vector<dialogue::DialogueRecord>, 3> SplitRecords(
    const RunConfig& config, const std::vector<dialogue::DialogueRecord>& records) {
  dialogue::SplitRatios ratios{config.split.train, config.split.valid, config.split.test};
  return dialogue::SplitDataset(records, ratios, config.seed,
                                [](const dialogue::DialogueRecord& r) -> const std::string& {
                                  return r.dialogue_id;
                                });
}

std::string ProbeFile(const std::string& task) { return "probes." + task + ".jsonl"; }

std::string ExampleFile(const RunConfig& config, std::string_view mode, std::string_view split) {
  return config.inputs.corpus + "." + std::string(mode) + "." + std::string(split) + ".jsonl";
}

ordered_json StatsJson(const dialogue::CandidateStats& s) {
  return {{"padded_examples", s.padded_examples},
          {"padded_negatives", s.padded_negatives},
          {"skipped", s.skipped},
          {"skipped_unresolved", s.skipped_unresolved},
          {"skipped_title_leak", s.skipped_title_leak}};
}

// Score files ------------------------------------------------------------

std::string SerializeRankings(std::span<const scoring::RankingOutcome> outcomes) {
  std::string out;
  for (const auto& o : outcomes) {
    ordered_json line;
    line["probe_id"] = o.key;
    if (o.ok()) {
      line["order"] = o.value->order;
      line["scores"] = metrics::ScoresByCandidate(*o.value);
      line["truncated"] = o.value->truncated;
    } else {
      line["error"] = o.error;
    }
    out += line.dump() + "\n";
  }
  return out;
}

std::string SerializeTokenRankings(std::span<const scoring::TokenOutcome> outcomes) {
  std::string out;
  for (const auto& o : outcomes) {
    ordered_json line;
    line["probe_id"] = o.key;
    if (o.ok()) {
      line["tokens"] = o.value->tokens;
      line["scores"] = o.value->scores;
    } else {
      line["error"] = o.error;
    }
    out += line.dump() + "\n";
  }
  return out;
}

template <typename Fn>
void ForEachJsonLine(const std::filesystem::path& path, Fn fn) {
  ForEachLine(path, [&](std::string_view line, size_t line_number) {
    if (line.empty()) return;
    try {
      fn(json::parse(line));
    } catch (const json::exception& e) {
      Fail(ErrorKind::kData, path.string() + ":" + std::to_string(line_number) + ": " + e.what());
    }
  });
}

// Stored per-candidate scores, aligned with keys; nullopt for failed items.
std::vector<std::optional<std::vector<double>>> LoadCandidateScores(
    const std::filesystem::path& path, const std::vector<std::string>& keys) {
  std::vector<std::optional<std::vector<double>>> out;
  size_t i = 0;
  ForEachJsonLine(path, [&](const json& doc) {
    Require(i < keys.size() && doc.at("probe_id").get<std::string>() == keys[i],
            ErrorKind::kData, path.string() + ": scores are not aligned with their dataset");
    if (doc.contains("scores")) {
      out.emplace_back(doc.at("scores").get<std::vector<double>>());
    } else {
      out.emplace_back();
    }
    ++i;
  });
  Require(i == keys.size(), ErrorKind::kData, path.string() + ": missing scores");
  return out;
}

std::vector<scoring::RankingOutcome> OutcomesFromScores(
    const std::vector<std::optional<std::vector<double>>>& scores,
    const std::vector<std::string>& keys) {
  std::vector<scoring::RankingOutcome> out(scores.size());
  for (size_t i = 0; i < scores.size(); ++i) {
    out[i].key = keys[i];
    if (scores[i]) {
      out[i].value = scoring::RankFromScores(*scores[i]);
    } else {
      out[i].error = "scoring failed";
    }
  }
  return out;
}

std::vector<scoring::TokenOutcome> LoadTokenOutcomes(const std::filesystem::path& path,
                                                     const std::vector<std::string>& keys) {
  std::vector<scoring::TokenOutcome> out;
  ForEachJsonLine(path, [&](const json& doc) {
    const size_t i = out.size();
    Require(i < keys.size() && doc.at("probe_id").get<std::string>() == keys[i],
            ErrorKind::kData, path.string() + ": scores are not aligned with their dataset");
    scoring::TokenOutcome o;
    o.key = keys[i];
    if (doc.contains("tokens")) {
      scoring::TokenRanking r;
      r.tokens = doc.at("tokens").get<std::vector<std::string>>();
      r.scores = doc.at("scores").get<std::vector<double>>();
      o.value = std::move(r);
    } else {
      o.error = doc.value("error", std::string("scoring failed"));
    }
    out.push_back(std::move(o));
  });
  Require(out.size() == keys.size(), ErrorKind::kData, path.string() + ": missing scores");
  return out;
}

template <typename Outcome>
size_t CountFailed(const std::vector<Outcome>& outcomes) {
  size_t failed = 0;
  for (const auto& o : outcomes) failed += o.ok() ? 0 : 1;
  return failed;
}

template <typename Outcome>
void RequireSomeSuccess(const std::vector<Outcome>& outcomes) {
  if (outcomes.empty() || CountFailed(outcomes) < outcomes.size()) return;
  Fail(ErrorKind::kTransport, "every item failed to score; first error: " + outcomes[0].error);
}

}  // namespace

std::string DatasetName(const RunConfig& config) {
  if (config.probes.task == "response") {
    return config.inputs.corpus + "." + config.target.mode + "." + config.target.split;
  }
  return (config.domain.empty() ? std::string("all") : config.domain) + "-" + config.probes.task;
}

void Ingest(const RunConfig& config, const StageOptions& options) {
  RunDir run = OpenRun(config, options);
  bool any = false;
  if (!config.inputs.catalog.empty()) {
    corpus::ItemCatalog catalog = IngestCatalog(config);
    run.Write("catalog.jsonl", corpus::SerializeCatalog(catalog), "ingest",
              {{"items", catalog.size()}, {"skipped", catalog.skipped()}});
    Log(options, "ingest: " + std::to_string(catalog.size()) + " items");
    any = true;
  }
  if (!config.inputs.interactions.empty()) {
    corpus::InteractionSet interactions = IngestInteractions(config);
    run.Write("interactions.jsonl", corpus::SerializeInteractions(interactions), "ingest",
              {{"interactions", interactions.size()},
               {"users", interactions.user_count()},
               {"skipped", interactions.skipped()}});
    Log(options, "ingest: " + std::to_string(interactions.size()) + " interactions");
    any = true;
  }
  if (!config.inputs.reviews.empty()) {
    corpus::ReviewSet reviews = IngestReviews(config);
    run.Write("reviews.jsonl", corpus::SerializeReviews(reviews), "ingest",
              {{"reviews", reviews.size()},
               {"skipped", reviews.skipped()},
               {"capped", reviews.capped()}});
    Log(options, "ingest: " + std::to_string(reviews.size()) + " reviews");
    any = true;
  }
  if (!config.inputs.dialogues.empty()) {
    dialogue::LoadStats stats;
    auto records = IngestDialogues(config, &stats);
    run.Write("dialogues.jsonl", dialogue::SerializeDialogues(records), "ingest",
              {{"records", records.size()},
               {"empty_context", stats.empty_context},
               {"malformed", stats.malformed}});
    Log(options, "ingest: " + std::to_string(records.size()) + " dialogue records");
    any = true;
  }
  Require(any, ErrorKind::kConfig, "no inputs configured");
  run.Write("run.json", DataConfigJson(config).dump(2) + "\n", "ingest");
}

void GenProbes(const RunConfig& config, const StageOptions& options) {
  RunDir run = OpenRun(config, options);
  const std::string& task = config.probes.task;
  const std::string name = ProbeFile(task);
  ordered_json extra = {{"task", task}, {"dataset", DatasetName(config)}};
  if (task == "genre") {
    probegen::GenreProbeOptions opts;
    opts.n = config.probes.n;
    opts.kind = *probegen::ParseTemplateKind(config.probes.template_kind);
    opts.seed = config.seed;
    opts.mask_token = config.probes.mask_token;
    opts.slot = *probegen::ParseGenreSlot(config.probes.genre_slot);
    auto probes = probegen::BuildGenreProbes(CatalogArtifact(run, options), opts);
    extra["count"] = probes.size();
    run.Write(name, probegen::SerializeGenreProbes(probes), "gen-probes", extra);
    Log(options, "gen-probes: " + std::to_string(probes.size()) + " genre probes -> " +
                     run.Path(name).string());
    return;
  }
  std::vector<probegen::PairProbe> probes;
  probegen::BuildStats stats;
  if (task == "search") {
    probegen::SearchProbeOptions opts;
    opts.n = config.probes.n;
    opts.k = config.probes.k;
    opts.seed = config.seed;
    opts.max_review_words = config.probes.max_review_words;
    probes = probegen::BuildSearchProbes(ReviewsArtifact(run, options), CatalogArtifact(run, options), opts,
                                         &stats);
  } else if (task == "recommendation") {
    probegen::RecommendationProbeOptions opts;
    opts.n = config.probes.n;
    opts.k = config.probes.k;
    opts.seed = config.seed;
    opts.unique_users = config.probes.unique_users;
    corpus::InteractionSet interactions = InteractionsArtifact(run, options);
    probes = probegen::BuildRecommendationProbes(interactions, CatalogArtifact(run, options),
                                                 corpus::Popularity(interactions), opts, &stats);
  } else {
    Fail(ErrorKind::kConfig, "gen-probes does not build task " + task);
  }
  Require(!probes.empty(), ErrorKind::kData, "no probes could be generated for task " + task);
  extra["count"] = probes.size();
  extra["k"] = config.probes.k;
  extra["skipped"] = stats.skipped;
  extra["unresolved"] = stats.unresolved;
  run.Write(name, probegen::SerializePairProbes(probes), "gen-probes", extra);
  Log(options, "gen-probes: " + std::to_string(probes.size()) + " " + task + " probes -> " +
                   run.Path(name).string());
}

void GenCandidates(const RunConfig& config, const StageOptions& options) {
  RunDir run = OpenRun(config, options);
  auto records = DialoguesArtifact(run, options);
  auto splits = SplitRecords(config, records);
  dialogue::ResponsePool pool =
      dialogue::BuildResponsePool(records, bm25::Params{config.bm25.k1, config.bm25.b});
  run.Write("bm25.index", pool.index.Serialize(), "gen-candidates",
            {{"documents", pool.index.doc_count()}, {"terms", pool.index.term_count()}});
  dialogue::CandidateSetPolicy policy{config.bm25.k, dialogue::CandidateMode::kBm25};
  for (size_t s = 0; s < 3; ++s) {
    dialogue::CandidateStats stats;
    auto examples = dialogue::BuildBm25Candidates(splits[s], pool, policy, config.seed, &stats);
    const std::string name = ExampleFile(config, "bm25", kSplitNames[s]);
    ordered_json extra = StatsJson(stats);
    extra["examples"] = examples.size();
    extra["k"] = config.bm25.k;
    run.Write(name, dialogue::SerializeExamples(examples), "gen-candidates", extra);
    Log(options, "gen-candidates: " + std::to_string(examples.size()) + " examples -> " +
                     run.Path(name).string());
  }
}

void GenAdversarial(const RunConfig& config, const StageOptions& options) {
  RunDir run = OpenRun(config, options);
  auto records = DialoguesArtifact(run, options);
  auto splits = SplitRecords(config, records);
  corpus::ItemCatalog catalog = CatalogArtifact(run, options);
  dialogue::CandidateSetPolicy policy{config.bm25.k, dialogue::CandidateMode::kAdversarial};
  for (size_t s = 0; s < 3; ++s) {
    dialogue::CandidateStats stats;
    auto examples =
        dialogue::BuildAdversarialCandidates(splits[s], catalog, policy, config.seed, &stats);
    const std::string name = ExampleFile(config, "adversarial", kSplitNames[s]);
    ordered_json extra = StatsJson(stats);
    extra["examples"] = examples.size();
    extra["k"] = config.bm25.k;
    run.Write(name, dialogue::SerializeExamples(examples), "gen-adversarial", extra);
    Log(options, "gen-adversarial: " + std::to_string(examples.size()) + " examples -> " +
                     run.Path(name).string());
  }
}

void Probe(const RunConfig& config, const StageOptions& options) {
  RunDir run = OpenRun(config, options);
  const std::string& task = config.probes.task;
  const std::string dataset = DatasetName(config);
  std::unique_ptr<scoring::Scorer> scorer = scoring::MakeScorer(config.scorer.spec);
  auto* oracle = dynamic_cast<scoring::LabelOracleScorer*>(scorer.get());
  const scoring::BatchOptions batch{config.scorer.batch_size, config.scorer.concurrency};

  std::string source;
  std::string kind;
  std::string technique;
  std::string content;
  size_t failed = 0;
  size_t total = 0;
  if (task == "genre") {
    source = ProbeFile(task);
    run.CheckProvenance(source, options.force);
    auto probes = probegen::LoadGenreProbes(run.Path(source));
    if (oracle != nullptr) oracle->Register(std::span<const probegen::GenreProbe>(probes));
    auto outcomes = scoring::RankGenreProbes(*scorer, probes, config.scorer.top_k, batch);
    RequireSomeSuccess(outcomes);
    kind = "genre";
    technique = "MLM";
    failed = CountFailed(outcomes);
    total = outcomes.size();
    content = SerializeTokenRankings(outcomes);
  } else if (task == "search" || task == "recommendation") {
    source = ProbeFile(task);
    run.CheckProvenance(source, options.force);
    auto probes = probegen::LoadPairProbes(run.Path(source));
    if (oracle != nullptr) oracle->Register(std::span<const probegen::PairProbe>(probes));
    const scoring::Technique t = scoring::ParseTechnique(config.scorer.technique);
    auto outcomes = scoring::RankProbes(*scorer, probes, t, batch);
    RequireSomeSuccess(outcomes);
    kind = "pair";
    technique = std::string(scoring::TechniqueName(t));
    failed = CountFailed(outcomes);
    total = outcomes.size();
    content = SerializeRankings(outcomes);
  } else {
    source = ExampleFile(config, config.target.mode, config.target.split);
    run.CheckProvenance(source, options.force);
    auto examples = dialogue::LoadExamples(run.Path(source));
    if (oracle != nullptr) {
      oracle->Register(std::span<const dialogue::DialogueExample>(examples));
    }
    auto outcomes = scoring::RankExamples(*scorer, examples, batch);
    RequireSomeSuccess(outcomes);
    kind = "response";
    technique = "RANK";
    failed = CountFailed(outcomes);
    total = outcomes.size();
    content = SerializeRankings(outcomes);
  }
  const std::string name = "scores." + dataset + "." + technique + ".jsonl";
  run.Write(name, content, "probe",
            {{"source", source},
             {"kind", kind},
             {"dataset", dataset},
             {"technique", technique},
             {"scorer", scorer->Info().model},
             {"items", total},
             {"failed", failed}});
  Log(options, "probe: scored " + std::to_string(total - failed) + "/" + std::to_string(total) +
                   " items -> " + run.Path(name).string());
}

void Eval(const RunConfig& config, const StageOptions& options) {
  RunDir run = OpenRun(config, options);
  const std::vector<std::string> score_files = run.List("scores.", ".jsonl");
  Require(!score_files.empty(), ErrorKind::kData,
          "no score files in " + run.dir().string() + "; run probe first");
  std::vector<metrics::ReportRow> rows;
  std::vector<metrics::PerQueryRecord> per_query;
  for (const std::string& file : score_files) {
    json meta = run.CheckProvenance(file, options.force);
    const std::string source = meta.at("source").get<std::string>();
    const std::string kind = meta.at("kind").get<std::string>();
    const std::string dataset = meta.at("dataset").get<std::string>();
    const std::string technique = meta.at("technique").get<std::string>();
    run.CheckProvenance(source, options.force);
    std::vector<metrics::RankEval> evals;
    if (kind == "genre") {
      auto probes = probegen::LoadGenreProbes(run.Path(source));
      std::vector<std::string> keys;
      for (const auto& p : probes) keys.push_back(p.probe_id);
      auto outcomes = LoadTokenOutcomes(run.Path(file), keys);
      metrics::GenreEval eval = metrics::EvaluateGenreProbes(probes, outcomes);
      evals = {eval.at_1, eval.at_5};
    } else if (kind == "pair") {
      auto probes = probegen::LoadPairProbes(run.Path(source));
      std::vector<std::string> keys;
      for (const auto& p : probes) keys.push_back(p.probe_id);
      auto scores = LoadCandidateScores(run.Path(file), keys);
      metrics::PairEval eval =
          metrics::EvaluatePairProbes(probes, OutcomesFromScores(scores, keys));
      evals.push_back(eval.recall);
      if (!config.metrics.xs.empty()) {
        for (auto& point : metrics::SweepFromScores(probes, scores, config.metrics.xs)) {
          if (point.k_or_x != eval.recall.k_or_x) evals.push_back(std::move(point));
        }
      }
    } else if (kind == "response") {
      auto examples = dialogue::LoadExamples(run.Path(source));
      std::vector<std::string> keys;
      for (const auto& e : examples) keys.push_back(e.example_id);
      auto scores = LoadCandidateScores(run.Path(file), keys);
      metrics::ResponseEval eval =
          metrics::EvaluateExamples(examples, OutcomesFromScores(scores, keys));
      evals = {eval.ndcg, eval.mrr};
    } else {
      Fail(ErrorKind::kData, file + ": unknown score kind " + kind);
    }
    std::sort(evals.begin(), evals.end(), [](const auto& a, const auto& b) {
      return std::tie(a.metric, a.k_or_x) < std::tie(b.metric, b.k_or_x);
    });
    for (const auto& e : evals) rows.push_back(metrics::MakeRow(dataset, technique, e));
    auto records = metrics::PerQueryRecords(dataset, technique, evals);
    per_query.insert(per_query.end(), records.begin(), records.end());
    Log(options, "eval: " + file);
  }
  run.Write("report.csv", metrics::FormatReportCsv(rows), "eval",
            {{"sources", score_files}});
  run.Write("per_query.jsonl", metrics::FormatPerQuery(per_query), "eval",
            {{"sources", score_files}});
  Log(options, "eval: wrote " + run.Path("report.csv").string());
}

void Report(const RunConfig& config, const StageOptions& options) {
  RunDir run = OpenRun(config, options);
  run.CheckProvenance("report.csv", options.force);
  run.CheckProvenance("per_query.jsonl", options.force);
  auto rows = metrics::ParseReportCsv(ReadFile(run.Path("report.csv")));
  auto records = metrics::ParsePerQuery(ReadFile(run.Path("per_query.jsonl")));
  auto families = metrics::CompareTechniques(records, config.metrics.alpha);
  run.Write("significance.json", metrics::FormatSignificance(families), "report");
  Log(options, "report: " + std::to_string(families.size()) + " comparison families");
  if (config.metrics.xs.empty()) return;
  for (const metrics::PlotSeries& series : metrics::PlotData(rows)) {
    const std::string name = "plot." + series.dataset + "." + series.technique + ".tsv";
    run.Write(name, metrics::FormatPlotTsv(series), "report");
    Log(options, "report: wrote " + run.Path(name).string());
  }
}

void RunStage(std::string_view stage, const RunConfig& config, const StageOptions& options) {
  if (stage == "ingest") return Ingest(config, options);
  if (stage == "gen-probes") return GenProbes(config, options);
  if (stage == "gen-candidates") return GenCandidates(config, options);
  if (stage == "gen-adversarial") return GenAdversarial(config, options);
  if (stage == "probe") return Probe(config, options);
  if (stage == "eval") return Eval(config, options);
  if (stage == "report") return Report(config, options);
  Fail(ErrorKind::kConfig, "unknown subcommand: " + std::string(stage));
}

}  // namespace crsprobe::cli
