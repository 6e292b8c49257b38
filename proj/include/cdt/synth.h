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

// Synthetic data with known causal structure, and recall of a tree against it.

#ifndef CDT_SYNTH_H_
#define CDT_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cdt/cdt.h"
#include "cdt/dataset.h"

namespace cdt {

struct ContextTruth {
  std::vector<std::pair<std::string, uint8_t>> context;
  std::set<std::string> causes;  // causes of the outcome inside the context

  friend bool operator==(const ContextTruth&, const ContextTruth&) = default;
};

struct GroundTruth {
  std::string outcome;
  std::set<std::string> direct_causes;  // parents and children of the outcome
  std::vector<ContextTruth> context_truths;

  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

struct SyntheticData {
  BinaryDataset data;
  GroundTruth truth;
};

struct EvalReport {
  double recall = 0.0;
  std::set<std::string> found;   // attributes on any branch node
  std::set<std::string> missed;  // truth attributes on no branch node
  std::optional<double> context_recall;
};

inline constexpr size_t kDefaultSampleSize = 10000;

// Random DAG over num_vars binary variables v1..vN (edge probability
// degree/(N-1) over a random topological order, at most 10 parents), CPT
// entries uniform in [0.1, 0.9], ancestral sampling of n records. A node with
// exactly target_degree neighbours becomes the outcome. Throws
// std::invalid_argument unless 3 <= target_degree <= 7 and
// num_vars >= target_degree + 1; std::runtime_error if no node of that degree
// appears within 200 structures.
SyntheticData gen_random_bn(size_t num_vars, size_t target_degree,
                            uint64_t seed, size_t n = kDefaultSampleSize);

// One edge v1 -> vN with P(vN=1) = logistic(-s/2 + s * v1); every other
// variable is a fair coin.
SyntheticData gen_single_edge(size_t num_vars, double effect_strength,
                              uint64_t seed, size_t n = kDefaultSampleSize);

// Two-level design: v1 acts on the outcome everywhere, v2 only where v1 = 1.
// logit P(vN=1) = -s/2 + s * v1 * (v2 + 1/2): v1 raises the outcome in both
// v2 strata, v2 only where v1 = 1.
SyntheticData gen_planted_context(size_t num_vars, double effect_strength,
                                  uint64_t seed, size_t n = kDefaultSampleSize);

// num_vars fair-coin attributes x1..xN and a fair-coin outcome y.
BinaryDataset gen_noise(size_t num_vars, size_t n, uint64_t seed);

// Throws std::invalid_argument when the truth has no direct causes.
EvalReport eval_recall(const CausalDecisionTree& tree, const GroundTruth& truth);

// Share of (context, cause) pairs for which the tree has a branch on the
// cause below a path that fixes every assignment of the context. nullopt
// when the truth lists no context causes.
std::optional<double> context_recall(const CausalDecisionTree& tree,
                                     const GroundTruth& truth);

std::string truth_to_json(const GroundTruth& truth);
GroundTruth parse_truth(std::string_view json);  // throws DataError
std::string report_to_json(const EvalReport& report);

}  // namespace cdt

#endif  // CDT_SYNTH_H_
