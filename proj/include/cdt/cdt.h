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

// Causal decision trees: every branch node passed a Mantel-Haenszel partial
// association test in the context given by its root path.

#ifndef CDT_CDT_H_
#define CDT_CDT_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "cdt/dataset.h"
#include "cdt/stats.h"

namespace cdt {

struct CdtNode;
using CdtNodePtr = std::shared_ptr<const CdtNode>;

struct CdtLeaf {
  uint8_t label = 0;
  uint64_t support = 0;  // weight of the leaf's context dataset
};

struct CdtBranch {
  size_t attribute = 0;
  PamhResult test;
  std::vector<size_t> stratifying;  // attributes the test was stratified by
  size_t strata_count = 0;
  uint64_t support = 0;
  CdtNodePtr edge0;
  CdtNodePtr edge1;
};

struct CdtNode {
  std::variant<CdtLeaf, CdtBranch> value;

  bool is_leaf() const { return std::holds_alternative<CdtLeaf>(value); }
  const CdtLeaf& leaf() const { return std::get<CdtLeaf>(value); }
  const CdtBranch& branch() const { return std::get<CdtBranch>(value); }
};

struct CausalDecisionTree {
  CdtNodePtr root;
  double alpha = 0.05;
  size_t h_max = 5;
  std::vector<std::string> attribute_names;
  std::string outcome_name;

  bool empty() const { return root->is_leaf(); }
};

struct CdtOptions {
  double alpha = 0.05;
  size_t h_max = 5;
  size_t cap = 10;  // most correlated attributes used for stratification
  bool prune = true;
};

// Throws std::invalid_argument for alpha outside (0,1), h_max < 1, cap < 1,
// cap > kMaxStratifying + 1, or a dataset without attributes.
CausalDecisionTree tree_construct(const BinaryDataset& data,
                                  const CdtOptions& options = {});

// Collapses every branch whose two children are leaves with one label,
// repeatedly, until no such branch remains.
CausalDecisionTree tree_prune(const CausalDecisionTree& tree);

// Number of branch nodes on the longest root-to-leaf path.
size_t tree_height(const CdtNodePtr& node);
size_t node_count(const CdtNodePtr& node);

CdtNodePtr make_leaf(uint8_t label, uint64_t support);

}  // namespace cdt

#endif  // CDT_CDT_H_
