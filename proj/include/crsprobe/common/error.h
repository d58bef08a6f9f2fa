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

#ifndef CRSPROBE_COMMON_ERROR_H_
#define CRSPROBE_COMMON_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace crsprobe {

// Broad failure classes. The CLI maps these onto process exit codes.
enum class ErrorKind {
  kConfig,        // invalid configuration or unsatisfiable parameters
  kData,          // unreadable, empty or inconsistent input data
  kPrecondition,  // caller violated an operation's precondition
  kLookup,        // unknown identifier
  kTransport,     // scorer service unreachable or misbehaving
};

std::string_view ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void Fail(ErrorKind kind, const std::string& message);

inline void Require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) Fail(kind, message);
}

}  // namespace crsprobe

#endif  // CRSPROBE_COMMON_ERROR_H_
