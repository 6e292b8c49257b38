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

#include "cdt/bench.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <stdexcept>

#include "cdt/synth.h"

namespace cdt {

std::vector<BenchCell> run_bench(const BenchOptions& options) {
  if (options.repetitions == 0) throw std::invalid_argument("repetitions must be >= 1");
  std::vector<BenchCell> cells;
  std::vector<BinaryDataset> inputs;
  for (size_t m : options.num_vars) {
    for (size_t n : options.sizes) {
      inputs.push_back(gen_random_bn(m + 1, options.degree, options.seed, n).data);
      cells.push_back({m, n, 0.0});
    }
  }
  // Repetitions are interleaved across cells so that drift in machine speed
  // affects every cell alike; one untimed pass warms allocator and caches.
  std::vector<std::vector<double>> times(cells.size());
  for (size_t rep = 0; rep <= options.repetitions; ++rep) {
    for (size_t c = 0; c < cells.size(); ++c) {
      const auto start = std::chrono::steady_clock::now();
      const CausalDecisionTree tree = tree_construct(inputs[c], options.tree);
      const auto stop = std::chrono::steady_clock::now();
      if (tree.root == nullptr) throw std::logic_error("tree construction failed");
      if (rep > 0) {
        times[c].push_back(std::chrono::duration<double, std::milli>(stop - start).count());
      }
    }
  }
  for (size_t c = 0; c < cells.size(); ++c) {
    std::sort(times[c].begin(), times[c].end());
    cells[c].wall_ms = times[c][times[c].size() / 2];
  }
  return cells;
}

std::string bench_to_csv(const std::vector<BenchCell>& cells) {
  std::string out = "num_vars,n,wall_ms\n";
  char line[96];
  for (const auto& c : cells) {
    std::snprintf(line, sizeof(line), "%zu,%zu,%.3f\n", c.num_vars, c.n, c.wall_ms);
    out += line;
  }
  return out;
}

}  // namespace cdt
