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

#ifndef CRSPROBE_METRICS_REPORT_H_
#define CRSPROBE_METRICS_REPORT_H_

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crsprobe/metrics/metrics.h"
#include "crsprobe/metrics/stats.h"

namespace crsprobe::metrics {

// Column label of a metric at a cutoff: R@1, R_5@1, nDCG@10, MRR.
std::string MetricLabel(Metric metric, size_t k_or_x);

struct ReportRow {
  std::string dataset;
  std::string technique;
  Metric metric = Metric::kRecallXAt1;
  size_t k_or_x = 0;  // written as an empty field for MRR
  double mean = 0.0;
  double std = 0.0;
  size_t n = 0;

  bool operator==(const ReportRow&) const = default;
};

ReportRow MakeRow(std::string dataset, std::string technique, const RankEval& eval);

// report.csv: dataset,technique,metric,k_or_x,mean,std,n
std::string FormatReportCsv(std::span<const ReportRow> rows);
std::vector<ReportRow> ParseReportCsv(std::string_view text);

struct PerQueryRecord {
  std::string dataset;
  std::string technique;
  std::string probe_id;
  std::map<std::string, double> values;  // keyed by MetricLabel
};

// Merges evals of one (dataset, technique) into one record per query, in the
// order queries first appear.
std::vector<PerQueryRecord> PerQueryRecords(const std::string& dataset,
                                            const std::string& technique,
                                            std::span<const RankEval> evals);
std::string FormatPerQuery(std::span<const PerQueryRecord> records);
std::vector<PerQueryRecord> ParsePerQuery(std::string_view text);

// A family of comparisons sharing a dataset and metric; Bonferroni is
// applied within each family.
struct SignificanceFamily {
  std::string dataset;
  std::string metric;
  SignificanceReport report;
};

// Paired t-tests between every pair of techniques of a (dataset, metric),
// aligned on probe ids present in both. Pairs with fewer than 2 shared
// queries are skipped.
std::vector<SignificanceFamily> CompareTechniques(std::span<const PerQueryRecord> records,
                                                  double alpha);
std::string FormatSignificance(std::span<const SignificanceFamily> families);

struct PlotPoint {
  size_t x = 0;
  double mean = 0.0;
  double std = 0.0;
  size_t n = 0;
};

struct PlotSeries {
  std::string dataset;
  std::string technique;
  std::vector<PlotPoint> points;  // ascending x
};

// x -> R_x@1 series per (dataset, technique). Throws a data error when the
// report holds no candidate sweep.
std::vector<PlotSeries> PlotData(std::span<const ReportRow> rows);
std::string FormatPlotTsv(const PlotSeries& series);

}  // namespace crsprobe::metrics

#endif  // CRSPROBE_METRICS_REPORT_H_
