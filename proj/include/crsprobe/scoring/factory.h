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

#ifndef CRSPROBE_SCORING_FACTORY_H_
#define CRSPROBE_SCORING_FACTORY_H_

#include <memory>
#include <string>
#include <string_view>

#include "crsprobe/scoring/scorer.h"

namespace crsprobe::scoring {

inline constexpr char kEndpointEnvVar[] = "CRSPROBE_SCORER_ENDPOINT";

// Builds a scorer from a spec string:
//   mock:uniform:<seed>   independent uniform scores
//   mock:hash             hash of the inputs
//   mock:oracle           label oracle; register datasets before use
//   http://host:port      model service
// When the environment variable CRSPROBE_SCORER_ENDPOINT is set, it replaces
// an http spec.
std::unique_ptr<Scorer> MakeScorer(std::string_view spec);

}  // namespace crsprobe::scoring

#endif  // CRSPROBE_SCORING_FACTORY_H_
