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

#ifndef CRSPROBE_METRICS_STATS_H_
#define CRSPROBE_METRICS_STATS_H_

#include <span>
#include <string>
#include <vector>

namespace crsprobe::metrics {

struct TTestResult {
  double t = 0.0;
  double p = 1.0;
  double mean_difference = 0.0;
  size_t n = 0;
};

// Two-sided paired t-test on a - b with n-1 degrees of freedom. All-zero
// differences give t = 0, p = 1; zero spread with a nonzero mean gives an
// infinite t and p = 0.
TTestResult PairedTTest(std::span<const double> a, std::span<const double> b);

struct Comparison {
  std::string name_a;
  std::string name_b;
  double t_statistic = 0.0;
  double p_value = 1.0;
  bool significant = false;
};

struct SignificanceReport {
  std::vector<Comparison> comparisons;
  double alpha = 0.05;
  size_t m = 0;
};

// Marks each comparison significant iff p < alpha / m, m = comparisons.size().
SignificanceReport Bonferroni(std::vector<Comparison> comparisons, double alpha = 0.05);

}  // namespace crsprobe::metrics

#endif  // CRSPROBE_METRICS_STATS_H_
