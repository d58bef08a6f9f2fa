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

#include "crsprobe/metrics/report.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <json.hpp>
#include <set>
#include <tuple>

#include "crsprobe/common/error.h"
#include "crsprobe/common/text.h"

namespace crsprobe::metrics {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string FormatReal(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

// Quotes a CSV field when needed.
std::string CsvField(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> SplitCsv(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

template <typename T>
T ParseNumber(const std::string& s, const char* what) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  Require(ec == std::errc() && ptr == s.data() + s.size(), ErrorKind::kData,
          std::string("report: bad ") + what + ": " + s);
  return v;
}

}  // namespace

std::string MetricLabel(Metric metric, size_t k_or_x) {
  switch (metric) {
    case Metric::kRecallXAt1:
      return "R_" + std::to_string(k_or_x) + "@1";
    case Metric::kMrr:
      return "MRR";
    case Metric::kRecallAt1:
    case Metric::kRecallAt5:
      return "R@" + std::to_string(k_or_x);
    case Metric::kNdcgAt10:
      return "nDCG@" + std::to_string(k_or_x);
  }
  return "?";
}

ReportRow MakeRow(std::string dataset, std::string technique, const RankEval& eval) {
  ReportRow row;
  row.dataset = std::move(dataset);
  row.technique = std::move(technique);
  row.metric = eval.metric;
  row.k_or_x = eval.metric == Metric::kMrr ? 0 : eval.k_or_x;
  row.mean = Mean(eval.per_query);
  row.std = StdDev(eval.per_query);
  row.n = eval.per_query.size();
  return row;
}

std::string FormatReportCsv(std::span<const ReportRow> rows) {
  std::string out = "dataset,technique,metric,k_or_x,mean,std,n\n";
  for (const ReportRow& r : rows) {
    out += CsvField(r.dataset) + "," + CsvField(r.technique) + "," +
           std::string(MetricName(r.metric)) + "," +
           (r.metric == Metric::kMrr ? std::string() : std::to_string(r.k_or_x)) + "," +
           FormatReal(r.mean) + "," + FormatReal(r.std) + "," + std::to_string(r.n) + "\n";
  }
  return out;
}

std::vector<ReportRow> ParseReportCsv(std::string_view text) {
  std::vector<ReportRow> rows;
  size_t line_no = 0;
  size_t start = 0;
  while (start < text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    start = end + 1;
    if (line_no++ == 0 || Trim(line).empty()) continue;
    std::vector<std::string> f = SplitCsv(line);
    Require(f.size() == 7, ErrorKind::kData,
            "report line " + std::to_string(line_no) + ": expected 7 fields");
    ReportRow r;
    r.dataset = f[0];
    r.technique = f[1];
    r.metric = ParseMetric(f[2]);
    r.k_or_x = f[3].empty() ? 0 : ParseNumber<size_t>(f[3], "k_or_x");
    r.mean = ParseNumber<double>(f[4], "mean");
    r.std = ParseNumber<double>(f[5], "std");
    r.n = ParseNumber<size_t>(f[6], "n");
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<PerQueryRecord> PerQueryRecords(const std::string& dataset,
                                            const std::string& technique,
                                            std::span<const RankEval> evals) {
  std::vector<PerQueryRecord> records;
  std::map<std::string, size_t, std::less<>> slot;
  for (const RankEval& eval : evals) {
    Require(eval.keys.size() == eval.per_query.size(), ErrorKind::kPrecondition,
            "evaluation keys and values differ in length");
    const std::string label = MetricLabel(eval.metric, eval.k_or_x);
    for (size_t i = 0; i < eval.keys.size(); ++i) {
      auto [it, added] = slot.try_emplace(eval.keys[i], records.size());
      if (added) records.push_back({dataset, technique, eval.keys[i], {}});
      records[it->second].values[label] = eval.per_query[i];
    }
  }
  return records;
}

std::string FormatPerQuery(std::span<const PerQueryRecord> records) {
  std::string out;
  for (const PerQueryRecord& r : records) {
    ordered_json line;
    line["dataset"] = r.dataset;
    line["technique"] = r.technique;
    line["probe_id"] = r.probe_id;
    ordered_json values = ordered_json::object();
    for (const auto& [k, v] : r.values) values[k] = v;
    line["metrics"] = std::move(values);
    out += line.dump() + "\n";
  }
  return out;
}

std::vector<PerQueryRecord> ParsePerQuery(std::string_view text) {
  std::vector<PerQueryRecord> records;
  size_t start = 0;
  size_t line_no = 0;
  while (start < text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (Trim(line).empty()) continue;
    try {
      json doc = json::parse(line);
      PerQueryRecord r;
      r.dataset = doc.at("dataset").get<std::string>();
      r.technique = doc.at("technique").get<std::string>();
      r.probe_id = doc.at("probe_id").get<std::string>();
      for (const auto& [k, v] : doc.at("metrics").items()) r.values[k] = v.get<double>();
      records.push_back(std::move(r));
    } catch (const json::exception& e) {
      Fail(ErrorKind::kData, "per-query line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return records;
}

std::vector<SignificanceFamily> CompareTechniques(std::span<const PerQueryRecord> records,
                                                  double alpha) {
  // (dataset, metric) -> technique -> probe id -> value
  std::map<std::pair<std::string, std::string>,
           std::map<std::string, std::map<std::string, double>>>
      grouped;
  for (const PerQueryRecord& r : records) {
    for (const auto& [label, value] : r.values) {
      grouped[{r.dataset, label}][r.technique][r.probe_id] = value;
    }
  }
  std::vector<SignificanceFamily> families;
  for (const auto& [family, techniques] : grouped) {
    std::vector<Comparison> comparisons;
    for (auto a = techniques.begin(); a != techniques.end(); ++a) {
      for (auto b = std::next(a); b != techniques.end(); ++b) {
        std::vector<double> xa, xb;
        for (const auto& [id, va] : a->second) {
          auto it = b->second.find(id);
          if (it == b->second.end()) continue;
          xa.push_back(va);
          xb.push_back(it->second);
        }
        if (xa.size() < 2) continue;
        TTestResult t = PairedTTest(xa, xb);
        comparisons.push_back({a->first, b->first, t.t, t.p, false});
      }
    }
    if (comparisons.empty()) continue;
    families.push_back({family.first, family.second, Bonferroni(std::move(comparisons), alpha)});
  }
  return families;
}

std::string FormatSignificance(std::span<const SignificanceFamily> families) {
  ordered_json out = ordered_json::array();
  for (const SignificanceFamily& f : families) {
    ordered_json fam;
    fam["dataset"] = f.dataset;
    fam["metric"] = f.metric;
    fam["alpha"] = f.report.alpha;
    fam["m"] = f.report.m;
    ordered_json comps = ordered_json::array();
    for (const Comparison& c : f.report.comparisons) {
      ordered_json j;
      j["name_a"] = c.name_a;
      j["name_b"] = c.name_b;
      // JSON has no infinity; a saturated statistic is written as a string.
      if (std::isfinite(c.t_statistic)) {
        j["t_statistic"] = c.t_statistic;
      } else {
        j["t_statistic"] = c.t_statistic > 0 ? "inf" : "-inf";
      }
      j["p_value"] = c.p_value;
      j["significant"] = c.significant;
      comps.push_back(std::move(j));
    }
    fam["comparisons"] = std::move(comps);
    out.push_back(std::move(fam));
  }
  return out.dump(2) + "\n";
}

std::vector<PlotSeries> PlotData(std::span<const ReportRow> rows) {
  Require(!rows.empty(), ErrorKind::kData, "empty report: nothing to plot");
  std::map<std::pair<std::string, std::string>, std::vector<PlotPoint>> grouped;
  for (const ReportRow& r : rows) {
    if (r.metric != Metric::kRecallXAt1) continue;
    grouped[{r.dataset, r.technique}].push_back({r.k_or_x, r.mean, r.std, r.n});
  }
  std::vector<PlotSeries> out;
  for (auto& [key, points] : grouped) {
    std::sort(points.begin(), points.end(),
              [](const PlotPoint& a, const PlotPoint& b) { return a.x < b.x; });
    points.erase(std::unique(points.begin(), points.end(),
                             [](const PlotPoint& a, const PlotPoint& b) { return a.x == b.x; }),
                 points.end());
    if (points.size() < 2) continue;
    out.push_back({key.first, key.second, std::move(points)});
  }
  Require(!out.empty(), ErrorKind::kData, "report holds no candidate sweep");
  return out;
}

std::string FormatPlotTsv(const PlotSeries& series) {
  std::string out = "x\tR_x@1\tstd\tn\n";
  for (const PlotPoint& p : series.points) {
    out += std::to_string(p.x) + "\t" + FormatReal(p.mean) + "\t" + FormatReal(p.std) + "\t" +
           std::to_string(p.n) + "\n";
  }
  return out;
}

}  // namespace crsprobe::metrics
