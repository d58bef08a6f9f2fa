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

#ifndef CRSPROBE_TESTS_TESTING_CHECKS_H_
#define CRSPROBE_TESTS_TESTING_CHECKS_H_

#include <cstddef>
#include <string>
#include <vector>

#include "crsprobe/corpus/corpus.h"
#include "crsprobe/dialogue/dialogue.h"

namespace crsprobe::testing {

// Candidate text with every mention span of that candidate removed.
std::string TextOutsideMentions(const dialogue::DialogueExample& example, size_t candidate);

// Human-readable violations of the adversarial construction for one example:
// label and size shape, outside-span identity with the true response,
// duplicates of the true response, and leaks of the original titles.
std::vector<std::string> AdversarialViolations(const dialogue::DialogueExample& example,
                                               const dialogue::DialogueRecord& record,
                                               const corpus::ItemCatalog& catalog, size_t k);

// Brute-force metric recomputation from raw candidate scores. Positions are
// found by counting, independently of any sort: a candidate's 1-based
// position is one plus the number of candidates with a higher score or an
// equal score and a lower index.
std::vector<size_t> OraclePositions(const std::vector<double>& scores);
double OracleNdcg(const std::vector<double>& scores, const std::vector<int>& labels, size_t k);
double OracleMrr(const std::vector<double>& scores, const std::vector<int>& labels);
double OracleRecallAt1(const std::vector<double>& scores, size_t relevant);
// Counts gold genres with any whitespace-separated word among the first k
// tokens, ignoring ASCII case, divided by the number of gold genres.
double OracleGenreRecall(const std::vector<std::string>& tokens,
                         const std::vector<std::string>& gold, size_t k);

}  // namespace crsprobe::testing

#endif  // CRSPROBE_TESTS_TESTING_CHECKS_H_
