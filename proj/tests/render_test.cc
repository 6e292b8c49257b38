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

#include <functional>

#include "cdt/render.h"
#include "cdt/synth.h"
#include "test_util.h"

namespace cdt {
namespace {

using testing::Fig2;
using testing::Fig3;
using testing::Titanic;

size_t Count(const std::string& s, const std::string& needle) {
  size_t n = 0;
  for (size_t p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

TEST(ParseFormat, Names) {
  EXPECT_EQ(parse_format("text"), TreeFormat::kText);
  EXPECT_EQ(parse_format("json"), TreeFormat::kJson);
  EXPECT_EQ(parse_format("dot"), TreeFormat::kDot);
  EXPECT_FALSE(parse_format("xml").has_value());
}

TEST(Render, EmptyTree) {
  const CausalDecisionTree t = tree_construct(Fig2());
  EXPECT_EQ(render(t, TreeFormat::kText), "1  (80)\n");
  const std::string dot = render(t, TreeFormat::kDot);
  EXPECT_EQ(Count(dot, "shape=ellipse"), 1u);
  EXPECT_EQ(Count(dot, "->"), 0u);
  EXPECT_EQ(render_audit(t),
            "context\tattribute\tstatistic\tcritical_value\tstratifying\tstrata\tsupport\n");
}

TEST(Render, TitanicText) {
  const std::string text = render(tree_construct(Titanic()), TreeFormat::kText);
  EXPECT_EQ(text.rfind("female  [PAMH ", 0), 0u) << text;
  EXPECT_NE(text.find("\n  female = 1: thirdClass  [PAMH "), std::string::npos) << text;
  EXPECT_NE(text.find("\n    thirdClass = 0: 1  ("), std::string::npos) << text;
  EXPECT_NE(text.find("\n    thirdClass = 1: 0  ("), std::string::npos) << text;
}

TEST(Render, TitanicDot) {
  const std::string dot = render(tree_construct(Titanic()), TreeFormat::kDot);
  EXPECT_EQ(dot.rfind("digraph CDT {", 0), 0u);
  EXPECT_EQ(dot.back(), '\n');
  EXPECT_EQ(Count(dot, "{"), Count(dot, "}"));
  EXPECT_EQ(Count(dot, "shape=box"), 2u);
  EXPECT_EQ(Count(dot, "shape=ellipse"), 3u);
  EXPECT_EQ(Count(dot, "[label=\"y\"]"), 2u);
  EXPECT_EQ(Count(dot, "[label=\"n\"]"), 2u);
}

TEST(Render, DotEscapesNames) {
  const std::vector<Record> recs{{{1}, 1, 30}, {{0}, 0, 30}};
  const BinaryDataset d({"say \"hi\"\\"}, "y", recs);
  const std::string dot = render(tree_construct(d), TreeFormat::kDot);
  EXPECT_NE(dot.find("label=\"say \\\"hi\\\"\\\\\""), std::string::npos) << dot;
}

TEST(Render, AuditRows) {
  const std::string audit = render_audit(tree_construct(Titanic()));
  EXPECT_EQ(Count(audit, "\n"), 3u);
  EXPECT_NE(audit.find("\nfemale=1\tthirdClass\t"), std::string::npos) << audit;
}

void ExpectSameTree(const CausalDecisionTree& a, const CausalDecisionTree& b) {
  EXPECT_EQ(a.attribute_names, b.attribute_names);
  EXPECT_EQ(a.outcome_name, b.outcome_name);
  EXPECT_EQ(a.alpha, b.alpha);
  EXPECT_EQ(a.h_max, b.h_max);
  std::function<void(const CdtNodePtr&, const CdtNodePtr&)> same =
      [&](const CdtNodePtr& x, const CdtNodePtr& y) {
        ASSERT_EQ(x->is_leaf(), y->is_leaf());
        if (x->is_leaf()) {
          EXPECT_EQ(x->leaf().label, y->leaf().label);
          EXPECT_EQ(x->leaf().support, y->leaf().support);
          return;
        }
        const CdtBranch& p = x->branch();
        const CdtBranch& q = y->branch();
        EXPECT_EQ(p.attribute, q.attribute);
        EXPECT_EQ(p.test.statistic, q.test.statistic);
        EXPECT_EQ(p.test.critical_value, q.test.critical_value);
        EXPECT_EQ(p.test.numerator_terms, q.test.numerator_terms);
        EXPECT_EQ(p.test.variance_terms, q.test.variance_terms);
        EXPECT_EQ(p.stratifying, q.stratifying);
        EXPECT_EQ(p.strata_count, q.strata_count);
        EXPECT_EQ(p.support, q.support);
        same(p.edge0, q.edge0);
        same(p.edge1, q.edge1);
      };
  same(a.root, b.root);
}

TEST(JsonRoundTrip, CausalTrees) {
  std::vector<BinaryDataset> inputs{Fig2(), Fig3(), Titanic()};
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    inputs.push_back(gen_random_bn(14, 3 + seed % 4, seed, 2000).data);
  }
  for (const auto& d : inputs) {
    const CausalDecisionTree t = tree_construct(d);
    const std::string json = render(t, TreeFormat::kJson);
    const CausalDecisionTree back = parse_tree(json);
    ExpectSameTree(t, back);
    EXPECT_EQ(render(back, TreeFormat::kJson), json);
  }
}

TEST(JsonRoundTrip, PlainTrees) {
  for (auto criterion : {SplitCriterion::kInformationGain, SplitCriterion::kDiscriminative}) {
    const PlainTree t = info_gain_tree(Titanic(), 4, 0.0, criterion);
    const std::string json = render(t, TreeFormat::kJson);
    const PlainTree back = parse_plain_tree(json);
    EXPECT_EQ(back.criterion, criterion);
    EXPECT_EQ(node_count(back.root), node_count(t.root));
    EXPECT_EQ(render(back, TreeFormat::kJson), json);
  }
}

TEST(JsonRoundTrip, RejectsMalformed) {
  EXPECT_THROW(parse_tree("not json"), DataError);
  EXPECT_THROW(parse_tree("{\"kind\": \"plain_decision_tree\"}"), DataError);
  std::string json = render(tree_construct(Titanic()), TreeFormat::kJson);
  json.replace(json.find("\"thirdClass\""), 12, "\"nowhere\"");
  EXPECT_THROW(parse_tree(json), DataError);
}

TEST(Render, PlainTreeText) {
  const PlainTree t = info_gain_tree(Fig2(), 5, 0.0, SplitCriterion::kDiscriminative);
  const std::string text = render(t, TreeFormat::kText);
  EXPECT_EQ(text.rfind("A", 0), 0u) << text;
  EXPECT_NE(text.find("A = 0: B"), std::string::npos) << text;
  EXPECT_EQ(render(t, TreeFormat::kDot).rfind("digraph", 0), 0u);
}

}  // namespace
}  // namespace cdt
