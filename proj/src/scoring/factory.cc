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

#include "crsprobe/scoring/factory.h"

#include <charconv>
#include <cstdlib>

#include "crsprobe/common/error.h"
#include "crsprobe/scoring/http_scorer.h"
#include "crsprobe/scoring/mock_scorer.h"

namespace crsprobe::scoring {

std::unique_ptr<Scorer> MakeScorer(std::string_view spec) {
  constexpr std::string_view kUniform = "mock:uniform:";
  if (spec.starts_with(kUniform)) {
    std::string_view digits = spec.substr(kUniform.size());
    uint64_t seed = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), seed);
    Require(ec == std::errc() && ptr == digits.data() + digits.size() && !digits.empty(),
            ErrorKind::kConfig, "bad seed in scorer spec: " + std::string(spec));
    return std::make_unique<UniformRandomScorer>(seed);
  }
  if (spec == "mock:hash") return std::make_unique<HashScorer>();
  if (spec == "mock:oracle") return std::make_unique<LabelOracleScorer>();
  if (spec.starts_with("http://")) {
    HttpScorerOptions options;
    options.endpoint = std::string(spec);
    if (const char* env = std::getenv(kEndpointEnvVar); env != nullptr && *env != '\0') {
      options.endpoint = env;
    }
    return std::make_unique<HttpScorer>(std::move(options));
  }
  Fail(ErrorKind::kConfig, "unknown scorer: " + std::string(spec));
}

}  // namespace crsprobe::scoring
