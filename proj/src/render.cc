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

#include "cdt/render.h"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace cdt {
namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kCdtKind = "causal_decision_tree";
constexpr std::string_view kPlainKind = "plain_decision_tree";

std::string Fixed(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string DotEscape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

// Node accessors shared by both tree kinds.
template <typename NodePtr>
struct NodeTraits;

template <>
struct NodeTraits<CdtNodePtr> {
  static std::string Score(const CdtBranch& b) {
    std::string s = "PAMH " + Fixed(b.test.statistic.value_or(0.0)) + " >= " +
                    Fixed(b.test.critical_value) + "; " +
                    std::to_string(b.strata_count) + " strata";
    return s;
  }
};

template <>
struct NodeTraits<PlainNodePtr> {
  static std::string Score(const PlainBranch& b) { return "score " + Fixed(b.gain, 4); }
};

template <typename NodePtr>
void TextNode(const NodePtr& node, const std::vector<std::string>& names,
              int indent, std::ostringstream& out) {
  if (node->is_leaf()) {
    out << int{node->leaf().label} << "  (" << node->leaf().support << ")\n";
    return;
  }
  const auto& b = node->branch();
  const std::string& name = names[b.attribute];
  out << name << "  [" << NodeTraits<NodePtr>::Score(b) << "; n=" << b.support
      << "]\n";
  const NodePtr* edges[2] = {&b.edge0, &b.edge1};
  for (int w = 0; w <= 1; ++w) {
    out << std::string(static_cast<size_t>(indent + 2), ' ') << name << " = " << w
        << ": ";
    TextNode(*edges[w], names, indent + 2, out);
  }
}

template <typename NodePtr>
void DotNode(const NodePtr& node, const std::vector<std::string>& names,
             int& next_id, std::ostringstream& out) {
  const int id = next_id++;
  if (node->is_leaf()) {
    out << "  n" << id << " [shape=ellipse, label=\"" << int{node->leaf().label}
        << "\"];\n";
    return;
  }
  const auto& b = node->branch();
  out << "  n" << id << " [shape=box, label=\"" << DotEscape(names[b.attribute])
      << "\"];\n";
  const NodePtr* edges[2] = {&b.edge0, &b.edge1};
  for (int w = 0; w <= 1; ++w) {
    const int child = next_id;
    DotNode(*edges[w], names, next_id, out);
    out << "  n" << id << " -> n" << child << " [label=\"" << (w ? "y" : "n")
        << "\"];\n";
  }
}

template <typename Tree>
std::string Dot(const Tree& tree, std::string_view graph_name) {
  std::ostringstream out;
  out << "digraph " << graph_name << " {\n";
  int next_id = 0;
  DotNode(tree.root, tree.attribute_names, next_id, out);
  out << "}\n";
  return out.str();
}

template <typename Tree>
std::string Text(const Tree& tree) {
  std::ostringstream out;
  TextNode(tree.root, tree.attribute_names, 0, out);
  return out.str();
}

Json Names(const std::vector<size_t>& indices, const std::vector<std::string>& names) {
  Json out = Json::array();
  for (size_t i : indices) out.push_back(names[i]);
  return out;
}

Json CdtToJson(const CdtNodePtr& node, const std::vector<std::string>& names) {
  Json j;
  if (node->is_leaf()) {
    j["kind"] = "leaf";
    j["label"] = node->leaf().label;
    j["support"] = node->leaf().support;
    return j;
  }
  const CdtBranch& b = node->branch();
  j["kind"] = "branch";
  j["attribute"] = names[b.attribute];
  j["statistic"] = b.test.statistic ? Json(*b.test.statistic) : Json(nullptr);
  j["alpha"] = b.test.alpha;
  j["critical_value"] = b.test.critical_value;
  j["significant"] = b.test.significant;
  j["stratifying"] = Names(b.stratifying, names);
  j["strata"] = b.strata_count;
  j["support"] = b.support;
  j["numerator_terms"] = b.test.numerator_terms;
  j["variance_terms"] = b.test.variance_terms;
  j["children"] = {{"0", CdtToJson(b.edge0, names)}, {"1", CdtToJson(b.edge1, names)}};
  return j;
}

Json PlainToJson(const PlainNodePtr& node, const std::vector<std::string>& names) {
  Json j;
  if (node->is_leaf()) {
    j["kind"] = "leaf";
    j["label"] = node->leaf().label;
    j["support"] = node->leaf().support;
    return j;
  }
  const PlainBranch& b = node->branch();
  j["kind"] = "branch";
  j["attribute"] = names[b.attribute];
  j["gain"] = b.gain;
  j["support"] = b.support;
  j["children"] = {{"0", PlainToJson(b.edge0, names)}, {"1", PlainToJson(b.edge1, names)}};
  return j;
}

std::string_view CriterionName(SplitCriterion c) {
  return c == SplitCriterion::kInformationGain ? "information_gain" : "discriminative";
}

size_t IndexOf(const std::vector<std::string>& names, const std::string& name) {
  for (size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return i;
  }
  throw DataError("tree references unknown attribute '" + name + "'");
}

Json ParseDocument(std::string_view text, std::string_view kind) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::exception& e) {
    throw DataError(std::string("invalid tree JSON: ") + e.what());
  }
  if (!doc.is_object() || doc.value("kind", "") != kind) {
    throw DataError("tree JSON is not a " + std::string(kind));
  }
  return doc;
}

CdtNodePtr CdtFromJson(const Json& j, const std::vector<std::string>& names) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "leaf") {
    return make_leaf(j.at("label").get<uint8_t>(), j.at("support").get<uint64_t>());
  }
  if (kind != "branch") throw DataError("unknown node kind '" + kind + "'");
  CdtBranch b;
  b.attribute = IndexOf(names, j.at("attribute").get<std::string>());
  if (!j.at("statistic").is_null()) b.test.statistic = j.at("statistic").get<double>();
  b.test.alpha = j.at("alpha").get<double>();
  b.test.critical_value = j.at("critical_value").get<double>();
  b.test.significant = j.at("significant").get<bool>();
  b.test.numerator_terms = j.at("numerator_terms").get<std::vector<double>>();
  b.test.variance_terms = j.at("variance_terms").get<std::vector<double>>();
  for (const auto& s : j.at("stratifying")) b.stratifying.push_back(IndexOf(names, s));
  b.strata_count = j.at("strata").get<size_t>();
  b.support = j.at("support").get<uint64_t>();
  b.edge0 = CdtFromJson(j.at("children").at("0"), names);
  b.edge1 = CdtFromJson(j.at("children").at("1"), names);
  return std::make_shared<const CdtNode>(CdtNode{std::move(b)});
}

PlainNodePtr PlainFromJson(const Json& j, const std::vector<std::string>& names) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "leaf") {
    return std::make_shared<const PlainNode>(PlainNode{
        PlainLeaf{j.at("label").get<uint8_t>(), j.at("support").get<uint64_t>()}});
  }
  if (kind != "branch") throw DataError("unknown node kind '" + kind + "'");
  PlainBranch b;
  b.attribute = IndexOf(names, j.at("attribute").get<std::string>());
  b.gain = j.at("gain").get<double>();
  b.support = j.at("support").get<uint64_t>();
  b.edge0 = PlainFromJson(j.at("children").at("0"), names);
  b.edge1 = PlainFromJson(j.at("children").at("1"), names);
  return std::make_shared<const PlainNode>(PlainNode{std::move(b)});
}

void AuditNode(const CdtNodePtr& node, const CausalDecisionTree& tree,
               const std::string& context, std::ostringstream& out) {
  if (node->is_leaf()) return;
  const CdtBranch& b = node->branch();
  const auto& names = tree.attribute_names;
  std::string strat;
  for (size_t s : b.stratifying) strat += (strat.empty() ? "" : ",") + names[s];
  out << (context.empty() ? "-" : context) << '\t' << names[b.attribute] << '\t'
      << Fixed(b.test.statistic.value_or(0.0), 6) << '\t'
      << Fixed(b.test.critical_value, 6) << '\t' << (strat.empty() ? "-" : strat)
      << '\t' << b.strata_count << '\t' << b.support << '\n';
  const std::string prefix = context.empty() ? "" : context + " & ";
  AuditNode(b.edge0, tree, prefix + names[b.attribute] + "=0", out);
  AuditNode(b.edge1, tree, prefix + names[b.attribute] + "=1", out);
}

}  // namespace

std::optional<TreeFormat> parse_format(std::string_view name) {
  if (name == "text") return TreeFormat::kText;
  if (name == "json") return TreeFormat::kJson;
  if (name == "dot") return TreeFormat::kDot;
  return std::nullopt;
}

std::string render(const CausalDecisionTree& tree, TreeFormat format) {
  switch (format) {
    case TreeFormat::kText:
      return Text(tree);
    case TreeFormat::kDot:
      return Dot(tree, "CDT");
    case TreeFormat::kJson: {
      Json doc;
      doc["kind"] = kCdtKind;
      doc["outcome"] = tree.outcome_name;
      doc["alpha"] = tree.alpha;
      doc["max_height"] = tree.h_max;
      doc["attributes"] = tree.attribute_names;
      doc["root"] = CdtToJson(tree.root, tree.attribute_names);
      return doc.dump(2) + "\n";
    }
  }
  return {};
}

std::string render(const PlainTree& tree, TreeFormat format) {
  switch (format) {
    case TreeFormat::kText:
      return Text(tree);
    case TreeFormat::kDot:
      return Dot(tree, "DecisionTree");
    case TreeFormat::kJson: {
      Json doc;
      doc["kind"] = kPlainKind;
      doc["outcome"] = tree.outcome_name;
      doc["criterion"] = CriterionName(tree.criterion);
      doc["min_gain"] = tree.min_gain;
      doc["max_height"] = tree.h_max;
      doc["attributes"] = tree.attribute_names;
      doc["root"] = PlainToJson(tree.root, tree.attribute_names);
      return doc.dump(2) + "\n";
    }
  }
  return {};
}

std::string render_audit(const CausalDecisionTree& tree) {
  std::ostringstream out;
  out << "context\tattribute\tstatistic\tcritical_value\tstratifying\tstrata\tsupport\n";
  AuditNode(tree.root, tree, "", out);
  return out.str();
}

CausalDecisionTree parse_tree(std::string_view json) {
  const Json doc = ParseDocument(json, kCdtKind);
  try {
    CausalDecisionTree tree;
    tree.outcome_name = doc.at("outcome").get<std::string>();
    tree.alpha = doc.at("alpha").get<double>();
    tree.h_max = doc.at("max_height").get<size_t>();
    tree.attribute_names = doc.at("attributes").get<std::vector<std::string>>();
    tree.root = CdtFromJson(doc.at("root"), tree.attribute_names);
    return tree;
  } catch (const Json::exception& e) {
    throw DataError(std::string("malformed tree JSON: ") + e.what());
  }
}

PlainTree parse_plain_tree(std::string_view json) {
  const Json doc = ParseDocument(json, kPlainKind);
  try {
    PlainTree tree;
    tree.outcome_name = doc.at("outcome").get<std::string>();
    const std::string criterion = doc.at("criterion").get<std::string>();
    if (criterion == "information_gain") {
      tree.criterion = SplitCriterion::kInformationGain;
    } else if (criterion == "discriminative") {
      tree.criterion = SplitCriterion::kDiscriminative;
    } else {
      throw DataError("unknown split criterion '" + criterion + "'");
    }
    tree.min_gain = doc.at("min_gain").get<double>();
    tree.h_max = doc.at("max_height").get<size_t>();
    tree.attribute_names = doc.at("attributes").get<std::vector<std::string>>();
    tree.root = PlainFromJson(doc.at("root"), tree.attribute_names);
    return tree;
  } catch (const Json::exception& e) {
    throw DataError(std::string("malformed tree JSON: ") + e.what());
  }
}

}  // namespace cdt
