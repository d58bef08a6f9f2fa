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

#ifndef CRSPROBE_COMMON_IO_H_
#define CRSPROBE_COMMON_IO_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>

namespace crsprobe {

// Streams a text file line by line without buffering the whole file.
// line_number is 1-based. A trailing '\r' is stripped. Throws a data error if
// the file cannot be opened.
void ForEachLine(const std::filesystem::path& path,
                 const std::function<void(std::string_view line, size_t line_number)>& fn);

std::string ReadFile(const std::filesystem::path& path);

// Writes content to path, creating parent directories. Existing files are
// never changed: rewriting identical bytes is a no-op, and differing content
// is a config error unless overwrite is set.
void WriteArtifact(const std::filesystem::path& path, std::string_view content,
                   bool overwrite = false);

uint64_t Fnv1a64(std::string_view data);
std::string HexDigest(uint64_t value);

}  // namespace crsprobe

#endif  // CRSPROBE_COMMON_IO_H_
