/*
 * Copyright 2026 The CDT Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// The `cdt` command line: build, baseline, synth, eval and bench.

#ifndef CDT_CLI_H_
#define CDT_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cdt {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitData = 2 };

struct RunConfig {
  std::string command;  // build | baseline | synth | eval | bench
  std::string input;
  std::optional<std::string> out;
  std::string outcome;
  std::optional<std::string> weight_column;
  std::optional<std::string> rules;
  double alpha = 0.05;
  size_t h_max = 5;
  size_t cap = 10;
  double min_gain = 0.0;
  bool prune = true;
  uint64_t seed = 1;
  std::string format = "text";
  std::string criterion = "gain";  // baseline: gain | discriminative

  // synth
  std::string kind = "single-edge";
  size_t vars = 20;
  size_t rows = 10000;
  size_t degree = 3;
  double effect = 2.0;

  // eval
  std::string truth;

  // bench
  std::vector<size_t> bench_vars{40};
  std::vector<size_t> bench_rows{10000, 20000, 40000};
  size_t repetitions = 5;
  size_t bench_degree = 5;
  std::string kernels = "auto";
};

// Executes a parsed configuration. Returns kExitUsage for invalid option
// values and kExitData for unreadable or malformed inputs and unwritable
// outputs; messages go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv-style arguments (args[0] is the program name) and runs them.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace cdt

#endif  // CDT_CLI_H_
