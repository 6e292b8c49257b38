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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "cdt/cdt.h"
#include "cdt/render.h"
#include "cdt/stats.h"
#include "cdt/synth.h"

namespace cdt {
namespace {

std::string Csv(const BinaryDataset& d) {
  std::ostringstream out;
  write_csv(d, out);
  return out.str();
}

CdtNodePtr Branch(size_t attribute, CdtNodePtr e0, CdtNodePtr e1) {
  CdtBranch b;
  b.attribute = attribute;
  b.test.statistic = 10.0;
  b.test.significant = true;
  b.edge0 = std::move(e0);
  b.edge1 = std::move(e1);
  return std::make_shared<const CdtNode>(CdtNode{b});
}

CausalDecisionTree Tree(CdtNodePtr root) {
  CausalDecisionTree t;
  t.attribute_names = {"a", "b", "c", "d"};
  t.outcome_name = "y";
  t.root = std::move(root);
  return t;
}

double Logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

TEST(RandomBn, ShapeAndDeterminism) {
  const SyntheticData s = gen_random_bn(20, 3, 5);
  EXPECT_EQ(s.data.num_attributes(), 19u);
  EXPECT_EQ(s.data.num_records(), kDefaultSampleSize);
  EXPECT_EQ(s.truth.direct_causes.size(), 3u);
  for (const auto& c : s.truth.direct_causes) {
    EXPECT_TRUE(s.data.attribute_index(c).has_value()) << c;
  }
  EXPECT_EQ(s.data.outcome_name(), s.truth.outcome);
  const SyntheticData again = gen_random_bn(20, 3, 5);
  EXPECT_EQ(Csv(s.data), Csv(again.data));
  EXPECT_EQ(s.truth, again.truth);
  EXPECT_NE(Csv(s.data), Csv(gen_random_bn(20, 3, 6).data));
}

TEST(RandomBn, DegreeRange) {
  for (size_t degree = 3; degree <= 7; ++degree) {
    EXPECT_EQ(gen_random_bn(15, degree, degree, 500).truth.direct_causes.size(), degree);
  }
}

TEST(RandomBn, Preconditions) {
  EXPECT_THROW(gen_random_bn(20, 2, 1), std::invalid_argument);
  EXPECT_THROW(gen_random_bn(20, 8, 1), std::invalid_argument);
  EXPECT_THROW(gen_random_bn(4, 5, 1), std::invalid_argument);
}

TEST(SingleEdge, ContrastMatchesEffect) {
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    const SyntheticData s = gen_single_edge(20, 2.0, seed);
    EXPECT_EQ(s.truth.direct_causes, (std::set<std::string>{"v1"}));
    EXPECT_EQ(s.data.outcome_name(), "v20");
    const StratumTable t = cross_table(ContextView(s.data), 0);
    const double contrast = double(t.n11) / t.row1() - double(t.n21) / t.row2();
    EXPECT_NEAR(contrast, Logistic(1.0) - Logistic(-1.0), 0.03) << seed;
  }
}

TEST(SingleEdge, ZeroEffectIsRarelySignificant) {
  int insignificant = 0;
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    const SyntheticData s = gen_single_edge(20, 0.0, seed);
    const PamhResult r = pamh(stratify(ContextView(s.data), 0, {}), 0.05);
    insignificant += !r.significant;
  }
  EXPECT_GE(insignificant, 18);
}

TEST(Noise, FairCoins) {
  const BinaryDataset d = gen_noise(10, 4000, 3);
  EXPECT_EQ(d.num_attributes(), 10u);
  EXPECT_EQ(d.attribute_names()[0], "x1");
  EXPECT_EQ(d.outcome_name(), "y");
  ContextView v(d);
  for (size_t a = 0; a < 10; ++a) {
    const StratumTable t = cross_table(v, a);
    EXPECT_NEAR(double(t.row1()) / t.total(), 0.5, 0.05);
  }
  EXPECT_EQ(gen_noise(2, 1, 9).num_records(), 1u);
  EXPECT_EQ(Csv(gen_noise(5, 100, 4)), Csv(gen_noise(5, 100, 4)));
}

TEST(EvalRecall, Examples) {
  GroundTruth truth{"y", {"a", "b", "c"}, {}};
  const auto all = Tree(Branch(0, Branch(1, make_leaf(0, 1), make_leaf(1, 1)),
                              Branch(2, make_leaf(0, 1), make_leaf(1, 1))));
  EXPECT_DOUBLE_EQ(eval_recall(all, truth).recall, 1.0);
  EXPECT_DOUBLE_EQ(eval_recall(Tree(make_leaf(1, 1)), truth).recall, 0.0);

  truth.direct_causes = {"a", "c", "d"};
  const auto ab = Tree(Branch(0, make_leaf(0, 1), Branch(1, make_leaf(0, 1), make_leaf(1, 1))));
  truth.direct_causes = {"a", "b", "c"};
  const auto ac = Tree(Branch(0, make_leaf(0, 1), Branch(2, make_leaf(0, 1), make_leaf(1, 1))));
  const EvalReport r = eval_recall(ac, GroundTruth{"y", {"a", "b", "c"}, {}});
  EXPECT_NEAR(r.recall, 2.0 / 3.0, 1e-12);
  EXPECT_EQ(r.found, (std::set<std::string>{"a", "c"}));
  EXPECT_EQ(r.missed, (std::set<std::string>{"b"}));
  EXPECT_NEAR(eval_recall(ab, GroundTruth{"y", {"a", "c", "d"}, {}}).recall, 1.0 / 3.0, 1e-12);

  EXPECT_THROW(eval_recall(ac, GroundTruth{"y", {}, {}}), std::invalid_argument);
}

TEST(EvalRecall, MonotoneInTree) {
  const GroundTruth truth{"y", {"a", "b", "c", "d"}, {}};
  const auto small = Tree(Branch(0, make_leaf(0, 1), make_leaf(1, 1)));
  const auto big = Tree(Branch(0, Branch(3, make_leaf(0, 1), make_leaf(1, 1)), make_leaf(1, 1)));
  EXPECT_LE(eval_recall(small, truth).recall, eval_recall(big, truth).recall);
}

TEST(ContextRecall, PathMustFixContext) {
  GroundTruth truth{"y", {"a", "b"}, {ContextTruth{{{"a", 1}}, {"b"}}}};
  const auto under = Tree(Branch(0, make_leaf(0, 1), Branch(1, make_leaf(0, 1), make_leaf(1, 1))));
  const auto wrong = Tree(Branch(0, Branch(1, make_leaf(0, 1), make_leaf(1, 1)), make_leaf(1, 1)));
  EXPECT_EQ(context_recall(under, truth), 1.0);
  EXPECT_EQ(context_recall(wrong, truth), 0.0);
  EXPECT_FALSE(context_recall(under, GroundTruth{"y", {"a"}, {}}).has_value());
}

TEST(PlantedContext, TreeFindsContextCause) {
  const SyntheticData s = gen_planted_context(10, 2.0, 1);
  ASSERT_EQ(s.truth.context_truths.size(), 1u);
  const CausalDecisionTree t = tree_construct(s.data);
  const EvalReport r = eval_recall(t, s.truth);
  EXPECT_DOUBLE_EQ(r.recall, 1.0);
  ASSERT_TRUE(r.context_recall);
  EXPECT_DOUBLE_EQ(*r.context_recall, 1.0);
}

TEST(TruthJson, RoundTrip) {
  const SyntheticData s = gen_planted_context(6, 1.0, 2, 100);
  EXPECT_EQ(parse_truth(truth_to_json(s.truth)), s.truth);
  const SyntheticData b = gen_random_bn(12, 4, 3, 100);
  EXPECT_EQ(parse_truth(truth_to_json(b.truth)), b.truth);
  EXPECT_THROW(parse_truth("{"), DataError);
  EXPECT_THROW(parse_truth("{\"outcome\": 3}"), DataError);
}

}  // namespace
}  // namespace cdt
