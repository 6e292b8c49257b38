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

// A plain discriminative decision tree used as the classification baseline
// against causal decision trees.

#ifndef CDT_BASELINE_H_
#define CDT_BASELINE_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "cdt/dataset.h"

namespace cdt {

struct PlainNode;
using PlainNodePtr = std::shared_ptr<const PlainNode>;

struct PlainLeaf {
  uint8_t label = 0;
  uint64_t support = 0;
};

struct PlainBranch {
  size_t attribute = 0;
  double gain = 0.0;  // split score of the chosen criterion
  uint64_t support = 0;
  PlainNodePtr edge0;
  PlainNodePtr edge1;
};

struct PlainNode {
  std::variant<PlainLeaf, PlainBranch> value;

  bool is_leaf() const { return std::holds_alternative<PlainLeaf>(value); }
  const PlainLeaf& leaf() const { return std::get<PlainLeaf>(value); }
  const PlainBranch& branch() const { return std::get<PlainBranch>(value); }
};

enum class SplitCriterion {
  kInformationGain,
  // |P(Y=1 | X=1) - P(Y=0 | X=1)|, the discriminative-attribute score.
  kDiscriminative,
};

struct PlainTree {
  PlainNodePtr root;
  size_t h_max = 5;
  double min_gain = 0.0;
  SplitCriterion criterion = SplitCriterion::kInformationGain;
  std::vector<std::string> attribute_names;
  std::string outcome_name;
};

// |P(Y=1 | X=1) - P(Y=0 | X=1)| from weighted counts; 0 when no record of
// the view has X=1.
double discriminative_score(const ContextView& view, size_t attribute);

// Shannon entropy (bits) of the outcome in the view; 0 for an empty view.
double outcome_entropy(const ContextView& view);

// Entropy of the outcome minus its weighted conditional entropy given the
// attribute.
double information_gain(const ContextView& view, size_t attribute);

// Greedy top-down tree: split on the best-scoring unused attribute (ties by
// index) until the view is pure, attributes run out, h_max levels are used
// or the best score is <= min_gain. Throws std::invalid_argument for
// h_max < 1 or a negative min_gain.
PlainTree info_gain_tree(const BinaryDataset& data, size_t h_max = 5,
                         double min_gain = 0.0,
                         SplitCriterion criterion = SplitCriterion::kInformationGain);

size_t tree_height(const PlainNodePtr& node);
size_t node_count(const PlainNodePtr& node);

}  // namespace cdt

#endif  // CDT_BASELINE_H_
