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

#include "cdt/cdt.h"

#include <algorithm>
#include <stdexcept>

namespace cdt {
namespace {

struct Builder {
  const CdtOptions& options;

  CdtNodePtr Leaf(const ContextView& view) const {
    return make_leaf(majority_outcome(view), view.total_weight());
  }

  // `depth` counts the branch nodes above this one.
  CdtNodePtr Grow(const ContextView& view, const std::vector<size_t>& unused,
                  size_t depth) const {
    if (unused.empty() || depth >= options.h_max) return Leaf(view);

    const std::vector<size_t> correlated =
        correlated_attributes(view, unused, options.alpha, options.cap);

    // Argmax over candidates; a missing statistic ranks below every real one and
    // ties go to the smaller attribute index.
    bool have_best = false;
    size_t best_attr = 0;
    PamhResult best_test;
    std::vector<size_t> best_strat;
    size_t best_strata = 0;
    for (size_t candidate : correlated) {
      std::vector<size_t> others;
      for (size_t c : correlated) {
        if (c != candidate) others.push_back(c);
      }
      StrataSet strata = stratify(view, candidate, others);
      PamhResult test = pamh(strata, options.alpha);
      if (!test.statistic) continue;
      const bool better =
          !have_best || *test.statistic > *best_test.statistic ||
          (*test.statistic == *best_test.statistic && candidate < best_attr);
      if (better) {
        have_best = true;
        best_attr = candidate;
        best_test = std::move(test);
        best_strat = std::move(others);
        best_strata = strata.size();
      }
    }
    if (!have_best || !best_test.significant) return Leaf(view);

    std::vector<size_t> rest;
    for (size_t a : unused) {
      if (a != best_attr) rest.push_back(a);
    }
    CdtBranch branch;
    branch.attribute = best_attr;
    branch.test = std::move(best_test);
    branch.stratifying = std::move(best_strat);
    branch.strata_count = best_strata;
    branch.support = view.total_weight();
    CdtNodePtr* edges[2] = {&branch.edge0, &branch.edge1};
    for (uint8_t w = 0; w <= 1; ++w) {
      const ContextView child = restrict(view, best_attr, w);
      *edges[w] = child.empty() ? make_leaf(majority_outcome(view), 0)
                                : Grow(child, rest, depth + 1);
    }
    return std::make_shared<const CdtNode>(CdtNode{std::move(branch)});
  }
};

CdtNodePtr Prune(const CdtNodePtr& node) {
  if (node->is_leaf()) return node;
  const CdtBranch& b = node->branch();
  CdtNodePtr e0 = Prune(b.edge0);
  CdtNodePtr e1 = Prune(b.edge1);
  if (e0->is_leaf() && e1->is_leaf() && e0->leaf().label == e1->leaf().label) {
    return make_leaf(e0->leaf().label, e0->leaf().support + e1->leaf().support);
  }
  if (e0 == b.edge0 && e1 == b.edge1) return node;
  CdtBranch copy = b;
  copy.edge0 = std::move(e0);
  copy.edge1 = std::move(e1);
  return std::make_shared<const CdtNode>(CdtNode{std::move(copy)});
}

}  // namespace

CdtNodePtr make_leaf(uint8_t label, uint64_t support) {
  return std::make_shared<const CdtNode>(CdtNode{CdtLeaf{label, support}});
}

CausalDecisionTree tree_construct(const BinaryDataset& data,
                                  const CdtOptions& options) {
  if (!(options.alpha > 0.0 && options.alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1)");
  }
  if (options.h_max < 1) throw std::invalid_argument("h_max must be >= 1");
  if (options.cap < 1 || options.cap > kMaxStratifying + 1) {
    throw std::invalid_argument("cap must lie in [1, " +
                                std::to_string(kMaxStratifying + 1) + "]");
  }
  if (data.num_attributes() == 0) {
    throw std::invalid_argument("dataset has no attributes");
  }

  std::vector<size_t> all(data.num_attributes());
  for (size_t i = 0; i < all.size(); ++i) all[i] = i;

  CausalDecisionTree tree;
  tree.alpha = options.alpha;
  tree.h_max = options.h_max;
  tree.attribute_names = data.attribute_names();
  tree.outcome_name = data.outcome_name();
  tree.root = Builder{options}.Grow(ContextView(data), all, 0);
  return options.prune ? tree_prune(tree) : tree;
}

CausalDecisionTree tree_prune(const CausalDecisionTree& tree) {
  // A single post-order pass already reaches the fixpoint: a merge can only
  // turn the parent's child into a leaf, which the parent then inspects.
  CausalDecisionTree out = tree;
  out.root = Prune(tree.root);
  return out;
}

size_t tree_height(const CdtNodePtr& node) {
  if (node->is_leaf()) return 0;
  const CdtBranch& b = node->branch();
  return 1 + std::max(tree_height(b.edge0), tree_height(b.edge1));
}

size_t node_count(const CdtNodePtr& node) {
  if (node->is_leaf()) return 1;
  const CdtBranch& b = node->branch();
  return 1 + node_count(b.edge0) + node_count(b.edge1);
}

}  // namespace cdt
