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

#include "crsprobe/metrics/stats.h"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>

#include "crsprobe/common/error.h"
#include "crsprobe/metrics/metrics.h"

namespace crsprobe::metrics {

TTestResult PairedTTest(std::span<const double> a, std::span<const double> b) {
  Require(a.size() == b.size(), ErrorKind::kPrecondition,
          "paired samples differ in length");
  Require(a.size() >= 2, ErrorKind::kPrecondition, "paired t-test needs at least 2 pairs");
  std::vector<double> d(a.size());
  for (size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];

  TTestResult r;
  r.n = d.size();
  r.mean_difference = Mean(d);
  const double sd = StdDev(d);
  if (sd == 0.0) {
    if (r.mean_difference == 0.0) return r;
    r.t = std::copysign(std::numeric_limits<double>::infinity(), r.mean_difference);
    r.p = 0.0;
    return r;
  }
  const double n = static_cast<double>(r.n);
  r.t = r.mean_difference / (sd / std::sqrt(n));
  boost::math::students_t dist(n - 1.0);
  r.p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(r.t)));
  return r;
}

SignificanceReport Bonferroni(std::vector<Comparison> comparisons, double alpha) {
  Require(!comparisons.empty(), ErrorKind::kPrecondition, "no comparisons to correct");
  Require(alpha > 0.0 && alpha < 1.0, ErrorKind::kConfig, "alpha must lie in (0, 1)");
  SignificanceReport report;
  report.alpha = alpha;
  report.m = comparisons.size();
  const double threshold = alpha / static_cast<double>(report.m);
  for (Comparison& c : comparisons) c.significant = c.p_value < threshold;
  report.comparisons = std::move(comparisons);
  return report;
}

}  // namespace crsprobe::metrics
