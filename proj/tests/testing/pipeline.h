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

#ifndef CRSPROBE_TESTS_TESTING_PIPELINE_H_
#define CRSPROBE_TESTS_TESTING_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace crsprobe::testing {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

// Runs the crsprobe command line in-process; args exclude the program name.
CliResult RunCli(const std::vector<std::string>& args);

struct FixtureOptions {
  uint64_t seed = 7;
  size_t n = 300;
  size_t k = 10;
  std::string scorer = "mock:uniform:7";
  std::vector<size_t> xs = {2, 5, 10};
  size_t items = 300;
  size_t users = 200;
  size_t dialogues = 150;
};

// Writes a synthetic corpus and config.json into dir; returns the config path.
std::filesystem::path WriteFixture(const std::filesystem::path& dir, const FixtureOptions& options);

// Every stage in order, covering all probe tasks and both candidate modes.
std::vector<std::vector<std::string>> PipelineCommands();

// Runs PipelineCommands against config; returns "" or a description of the
// first failing command.
std::string RunPipeline(const std::filesystem::path& config,
                        const std::vector<std::string>& extra = {});

// Relative path -> bytes for every regular file under root.
std::map<std::string, std::string> ReadTree(const std::filesystem::path& root);

}  // namespace crsprobe::testing

#endif  // CRSPROBE_TESTS_TESTING_PIPELINE_H_
