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

#include "crsprobe/common/io.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "crsprobe/common/error.h"

namespace crsprobe {

void ForEachLine(const std::filesystem::path& path,
                 const std::function<void(std::string_view, size_t)>& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorKind::kData, "cannot open " + path.string());
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view view(line);
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    fn(view, line_number);
  }
  if (in.bad()) Fail(ErrorKind::kData, "read error on " + path.string());
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorKind::kData, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteArtifact(const std::filesystem::path& path, std::string_view content,
                   bool overwrite) {
  std::error_code ec;
  if (std::filesystem::exists(path, ec) && !overwrite) {
    if (ReadFile(path) == content) return;
    Fail(ErrorKind::kConfig,
         "refusing to overwrite existing artifact with different content: " +
             path.string());
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) Fail(ErrorKind::kData, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) Fail(ErrorKind::kData, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

uint64_t Fnv1a64(std::string_view data) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string HexDigest(uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

}  // namespace crsprobe
