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

#ifndef CRSPROBE_COMMON_TEXT_H_
#define CRSPROBE_COMMON_TEXT_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace crsprobe {

std::string_view Trim(std::string_view s);

// ASCII-only lowercasing; other bytes pass through unchanged.
std::string ToLowerAscii(std::string_view s);

std::vector<std::string> SplitWhitespace(std::string_view s);
size_t CountWords(std::string_view s);

std::string Join(const std::vector<std::string>& parts, std::string_view sep);

// Keeps the first max_words whitespace-delimited words joined by one space.
std::string TruncateWords(std::string_view s, size_t max_words);

// Byte offset of the first ASCII case-insensitive match of needle at or after
// from, or npos.
size_t FindIgnoreCase(std::string_view haystack, std::string_view needle,
                      size_t from = 0);

inline bool ContainsIgnoreCase(std::string_view haystack, std::string_view needle) {
  return FindIgnoreCase(haystack, needle) != std::string_view::npos;
}

// Replaces runs of whitespace with a single space and trims both ends.
std::string CollapseSpaces(std::string_view s);

// Number of code points in a UTF-8 string (invalid bytes count as one each).
size_t Utf8Length(std::string_view s);

// Byte offset of the code point at index cp, or nullopt past the end.
// cp == Utf8Length(s) maps to s.size().
std::optional<size_t> Utf8ByteOffset(std::string_view s, size_t cp);

// Decodes one code point at byte offset i, advancing i. Invalid sequences
// yield U+FFFD and consume a single byte.
char32_t DecodeUtf8(std::string_view s, size_t& i);

void AppendUtf8(std::string& out, char32_t cp);

}  // namespace crsprobe

#endif  // CRSPROBE_COMMON_TEXT_H_
