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

#include "cdt/baseline.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cdt/stats.h"

namespace cdt {
namespace {

double BinaryEntropy(uint64_t ones, uint64_t total) {
  if (total == 0 || ones == 0 || ones == total) return 0.0;
  const double p = static_cast<double>(ones) / static_cast<double>(total);
  return -(p * std::log2(p) + (1 - p) * std::log2(1 - p));
}

PlainNodePtr MakeLeaf(uint8_t label, uint64_t support) {
  return std::make_shared<const PlainNode>(PlainNode{PlainLeaf{label, support}});
}

struct Grower {
  size_t h_max;
  double min_gain;
  SplitCriterion criterion;

  double Score(const ContextView& view, size_t attribute) const {
    return criterion == SplitCriterion::kInformationGain
               ? information_gain(view, attribute)
               : discriminative_score(view, attribute);
  }

  PlainNodePtr Grow(const ContextView& view, const std::vector<size_t>& unused,
                    size_t depth) const {
    const auto leaf = [&] {
      return MakeLeaf(majority_outcome(view), view.total_weight());
    };
    if (unused.empty() || depth >= h_max || outcome_entropy(view) == 0.0) {
      return leaf();
    }
    size_t best = unused.front();
    double best_score = -1.0;
    for (size_t a : unused) {
      const double s = Score(view, a);
      if (s > best_score) {
        best_score = s;
        best = a;
      }
    }
    if (best_score <= min_gain) return leaf();

    std::vector<size_t> rest;
    for (size_t a : unused) {
      if (a != best) rest.push_back(a);
    }
    PlainBranch branch;
    branch.attribute = best;
    branch.gain = best_score;
    branch.support = view.total_weight();
    PlainNodePtr* edges[2] = {&branch.edge0, &branch.edge1};
    for (uint8_t w = 0; w <= 1; ++w) {
      const ContextView child = restrict(view, best, w);
      *edges[w] = child.empty() ? MakeLeaf(majority_outcome(view), 0)
                                : Grow(child, rest, depth + 1);
    }
    return std::make_shared<const PlainNode>(PlainNode{std::move(branch)});
  }
};

}  // namespace

double discriminative_score(const ContextView& view, size_t attribute) {
  const StratumTable t = cross_table(view, attribute);
  if (t.row1() == 0) return 0.0;
  const double n = static_cast<double>(t.row1());
  return std::fabs(static_cast<double>(t.n11) / n - static_cast<double>(t.n12) / n);
}

double outcome_entropy(const ContextView& view) {
  const ColumnBlock& rows = view.rows();
  uint64_t ones = 0;
  for (size_t i = 0; i < rows.rows(); ++i) {
    ones += rows.outcome[i] ? rows.weights[i] : 0;
  }
  return BinaryEntropy(ones, rows.total_weight);
}

double information_gain(const ContextView& view, size_t attribute) {
  const StratumTable t = cross_table(view, attribute);
  const uint64_t n = t.total();
  if (n == 0) return 0.0;
  const double parent = BinaryEntropy(t.col1(), n);
  const double conditional =
      (static_cast<double>(t.row1()) * BinaryEntropy(t.n11, t.row1()) +
       static_cast<double>(t.row2()) * BinaryEntropy(t.n21, t.row2())) /
      static_cast<double>(n);
  return std::max(parent - conditional, 0.0);
}

PlainTree info_gain_tree(const BinaryDataset& data, size_t h_max,
                         double min_gain, SplitCriterion criterion) {
  if (h_max < 1) throw std::invalid_argument("h_max must be >= 1");
  if (!(min_gain >= 0.0)) throw std::invalid_argument("min_gain must be >= 0");
  std::vector<size_t> all(data.num_attributes());
  for (size_t i = 0; i < all.size(); ++i) all[i] = i;

  PlainTree tree;
  tree.h_max = h_max;
  tree.min_gain = min_gain;
  tree.criterion = criterion;
  tree.attribute_names = data.attribute_names();
  tree.outcome_name = data.outcome_name();
  tree.root = Grower{h_max, min_gain, criterion}.Grow(ContextView(data), all, 0);
  return tree;
}

size_t tree_height(const PlainNodePtr& node) {
  if (node->is_leaf()) return 0;
  const PlainBranch& b = node->branch();
  return 1 + std::max(tree_height(b.edge0), tree_height(b.edge1));
}

size_t node_count(const PlainNodePtr& node) {
  if (node->is_leaf()) return 1;
  const PlainBranch& b = node->branch();
  return 1 + node_count(b.edge0) + node_count(b.edge1);
}

}  // namespace cdt
