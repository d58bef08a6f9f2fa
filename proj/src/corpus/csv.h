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

#ifndef CRSPROBE_SRC_CORPUS_CSV_H_
#define CRSPROBE_SRC_CORPUS_CSV_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace crsprobe::corpus::internal {

// Splits one RFC 4180 record. Returns nullopt on an unterminated quote.
std::optional<std::vector<std::string>> SplitCsvLine(std::string_view line);

}  // namespace crsprobe::corpus::internal

#endif  // CRSPROBE_SRC_CORPUS_CSV_H_
