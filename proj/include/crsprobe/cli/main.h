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

#ifndef CRSPROBE_CLI_MAIN_H_
#define CRSPROBE_CLI_MAIN_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace crsprobe::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitTransport = 4;

// Parses arguments (args[0] is the program name), runs one subcommand and
// returns the exit code. Failures print a JSON error record to err.
int Main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace crsprobe::cli

#endif  // CRSPROBE_CLI_MAIN_H_
