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

// Wall-clock scaling of causal tree construction over a grid of generated
// datasets.

#ifndef CDT_BENCH_H_
#define CDT_BENCH_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cdt/cdt.h"

namespace cdt {

struct BenchCell {
  size_t num_vars = 0;  // predictive attributes
  size_t n = 0;
  double wall_ms = 0.0;  // median over repetitions
};

struct BenchOptions {
  std::vector<size_t> num_vars{40};
  std::vector<size_t> sizes{10000, 20000, 40000};
  size_t repetitions = 5;
  size_t degree = 5;
  uint64_t seed = 1;
  CdtOptions tree;
};

// Times tree_construct only (median of the repetitions, which run
// round-robin across cells after one untimed pass); data generation is
// excluded. Each cell uses a random network over num_vars + 1 variables from
// the same seed.
std::vector<BenchCell> run_bench(const BenchOptions& options);

// "num_vars,n,wall_ms" header plus one row per cell.
std::string bench_to_csv(const std::vector<BenchCell>& cells);

}  // namespace cdt

#endif  // CDT_BENCH_H_
