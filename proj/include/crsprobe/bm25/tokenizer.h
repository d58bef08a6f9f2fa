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

#ifndef CRSPROBE_BM25_TOKENIZER_H_
#define CRSPROBE_BM25_TOKENIZER_H_

#include <string>
#include <string_view>
#include <vector>

namespace crsprobe::bm25 {

// Lowercases and splits on every code point that is not a letter or digit.
// No stemming and no stopword removal. ASCII and Latin-1 letters are
// lowercased; other non-ASCII code points count as word characters unless
// they fall in a punctuation, symbol or space block.
std::vector<std::string> Tokenize(std::string_view text);

}  // namespace crsprobe::bm25

#endif  // CRSPROBE_BM25_TOKENIZER_H_
