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

#include "cdt/synth.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "json.hpp"

namespace cdt {
namespace {

using Json = nlohmann::ordered_json;

constexpr size_t kMaxParents = 10;
constexpr int kStructureRetries = 200;

// mt19937_64 plus hand-rolled draws, so streams do not depend on the
// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  uint8_t Bernoulli(double p) { return Uniform() < p ? 1 : 0; }
  uint8_t Coin() { return static_cast<uint8_t>(engine_() >> 63); }
  size_t Below(size_t bound) {
    return static_cast<size_t>(Uniform() * static_cast<double>(bound));
  }

  template <typename T>
  void Shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[Below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

double Logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

std::string VarName(size_t i) { return "v" + std::to_string(i + 1); }

// Splits a full variable matrix into attributes and the outcome column.
BinaryDataset Assemble(std::vector<std::vector<uint8_t>> vars, size_t outcome,
                       const std::vector<std::string>& names) {
  ColumnBlock block;
  std::vector<std::string> attribute_names;
  for (size_t v = 0; v < vars.size(); ++v) {
    if (v == outcome) continue;
    attribute_names.push_back(names[v]);
    block.columns.push_back(std::move(vars[v]));
  }
  block.outcome = std::move(vars[outcome]);
  block.weights.assign(block.outcome.size(), 1);
  block.total_weight = block.outcome.size();
  return BinaryDataset(std::move(attribute_names), names[outcome], std::move(block));
}

std::vector<std::string> DefaultNames(size_t count) {
  std::vector<std::string> names(count);
  for (size_t i = 0; i < count; ++i) names[i] = VarName(i);
  return names;
}

void CollectBranches(const CdtNodePtr& node, const std::vector<std::string>& names,
                     std::set<std::string>& out) {
  if (node->is_leaf()) return;
  const CdtBranch& b = node->branch();
  out.insert(names[b.attribute]);
  CollectBranches(b.edge0, names, out);
  CollectBranches(b.edge1, names, out);
}

// True when some branch on `cause` sits below a path containing `context`.
bool FoundInContext(const CdtNodePtr& node, const std::vector<std::string>& names,
                    std::vector<std::pair<std::string, uint8_t>>& path,
                    const ContextTruth& truth, const std::string& cause) {
  if (node->is_leaf()) return false;
  const CdtBranch& b = node->branch();
  const std::string& name = names[b.attribute];
  if (name == cause) {
    const bool covered = std::all_of(
        truth.context.begin(), truth.context.end(), [&](const auto& assignment) {
          return std::find(path.begin(), path.end(), assignment) != path.end();
        });
    if (covered) return true;
  }
  for (uint8_t w = 0; w <= 1; ++w) {
    path.emplace_back(name, w);
    const bool hit =
        FoundInContext(w ? b.edge1 : b.edge0, names, path, truth, cause);
    path.pop_back();
    if (hit) return true;
  }
  return false;
}

}  // namespace

SyntheticData gen_random_bn(size_t num_vars, size_t target_degree,
                            uint64_t seed, size_t n) {
  if (target_degree < 3 || target_degree > 7) {
    throw std::invalid_argument("target_degree must lie in [3, 7]");
  }
  if (num_vars < target_degree + 1) {
    throw std::invalid_argument("num_vars must be at least target_degree + 1");
  }
  if (n == 0) throw std::invalid_argument("sample size must be >= 1");
  Rng rng(seed);
  const double edge_p =
      static_cast<double>(target_degree) / static_cast<double>(num_vars - 1);

  for (int attempt = 0; attempt < kStructureRetries; ++attempt) {
    std::vector<size_t> order(num_vars);
    for (size_t i = 0; i < num_vars; ++i) order[i] = i;
    rng.Shuffle(order);

    std::vector<std::vector<size_t>> parents(num_vars);
    std::vector<size_t> degree(num_vars, 0);
    for (size_t j = 1; j < num_vars; ++j) {
      for (size_t i = 0; i < j; ++i) {
        if (rng.Uniform() >= edge_p) continue;
        if (parents[order[j]].size() >= kMaxParents) continue;
        parents[order[j]].push_back(order[i]);
        ++degree[order[i]];
        ++degree[order[j]];
      }
    }
    std::vector<size_t> candidates;
    for (size_t v = 0; v < num_vars; ++v) {
      if (degree[v] == target_degree) candidates.push_back(v);
    }
    if (candidates.empty()) continue;
    const size_t outcome = candidates[rng.Below(candidates.size())];

    // cpt[v][config] = P(v = 1 | parents = config), parent 0 least significant.
    std::vector<std::vector<double>> cpt(num_vars);
    for (size_t v = 0; v < num_vars; ++v) {
      cpt[v].resize(size_t{1} << parents[v].size());
      for (double& p : cpt[v]) p = 0.1 + 0.8 * rng.Uniform();
    }
    std::vector<std::vector<uint8_t>> vars(num_vars, std::vector<uint8_t>(n));
    for (size_t r = 0; r < n; ++r) {
      for (size_t v : order) {
        size_t config = 0;
        for (size_t k = 0; k < parents[v].size(); ++k) {
          config |= size_t{vars[parents[v][k]][r]} << k;
        }
        vars[v][r] = rng.Bernoulli(cpt[v][config]);
      }
    }

    const std::vector<std::string> names = DefaultNames(num_vars);
    GroundTruth truth;
    truth.outcome = names[outcome];
    for (size_t p : parents[outcome]) truth.direct_causes.insert(names[p]);
    for (size_t v = 0; v < num_vars; ++v) {
      const auto& ps = parents[v];
      if (std::find(ps.begin(), ps.end(), outcome) != ps.end()) {
        truth.direct_causes.insert(names[v]);
      }
    }
    return {Assemble(std::move(vars), outcome, names), std::move(truth)};
  }
  throw std::runtime_error("no node of degree " + std::to_string(target_degree) +
                           " after " + std::to_string(kStructureRetries) +
                           " random structures");
}

SyntheticData gen_single_edge(size_t num_vars, double effect_strength,
                              uint64_t seed, size_t n) {
  if (num_vars < 2) throw std::invalid_argument("num_vars must be >= 2");
  if (n == 0) throw std::invalid_argument("sample size must be >= 1");
  Rng rng(seed);
  const size_t outcome = num_vars - 1;
  std::vector<std::vector<uint8_t>> vars(num_vars, std::vector<uint8_t>(n));
  const double base = -effect_strength / 2;
  for (size_t r = 0; r < n; ++r) {
    for (size_t v = 0; v < outcome; ++v) vars[v][r] = rng.Coin();
    vars[outcome][r] = rng.Bernoulli(Logistic(base + effect_strength * vars[0][r]));
  }
  const std::vector<std::string> names = DefaultNames(num_vars);
  GroundTruth truth;
  truth.outcome = names[outcome];
  truth.direct_causes = {names[0]};
  return {Assemble(std::move(vars), outcome, names), std::move(truth)};
}

SyntheticData gen_planted_context(size_t num_vars, double effect_strength,
                                  uint64_t seed, size_t n) {
  if (num_vars < 3) throw std::invalid_argument("num_vars must be >= 3");
  if (n == 0) throw std::invalid_argument("sample size must be >= 1");
  Rng rng(seed);
  const size_t outcome = num_vars - 1;
  std::vector<std::vector<uint8_t>> vars(num_vars, std::vector<uint8_t>(n));
  const double base = -effect_strength / 2;
  for (size_t r = 0; r < n; ++r) {
    for (size_t v = 0; v < outcome; ++v) vars[v][r] = rng.Coin();
    const double v1 = vars[0][r];
    const double v2 = vars[1][r];
    const double logit = base + effect_strength * v1 * (v2 + 0.5);
    vars[outcome][r] = rng.Bernoulli(Logistic(logit));
  }
  const std::vector<std::string> names = DefaultNames(num_vars);
  GroundTruth truth;
  truth.outcome = names[outcome];
  truth.direct_causes = {names[0], names[1]};
  truth.context_truths.push_back({{{names[0], 1}}, {names[1]}});
  return {Assemble(std::move(vars), outcome, names), std::move(truth)};
}

BinaryDataset gen_noise(size_t num_vars, size_t n, uint64_t seed) {
  if (num_vars < 1 || n < 1) {
    throw std::invalid_argument("gen_noise needs num_vars >= 1 and n >= 1");
  }
  Rng rng(seed);
  std::vector<std::vector<uint8_t>> vars(num_vars + 1, std::vector<uint8_t>(n));
  for (size_t r = 0; r < n; ++r) {
    for (auto& column : vars) column[r] = rng.Coin();
  }
  std::vector<std::string> names(num_vars + 1);
  for (size_t i = 0; i < num_vars; ++i) names[i] = "x" + std::to_string(i + 1);
  names[num_vars] = "y";
  return Assemble(std::move(vars), num_vars, names);
}

EvalReport eval_recall(const CausalDecisionTree& tree, const GroundTruth& truth) {
  if (truth.direct_causes.empty()) {
    throw std::invalid_argument("ground truth has no causes");
  }
  EvalReport report;
  CollectBranches(tree.root, tree.attribute_names, report.found);
  size_t hits = 0;
  for (const auto& cause : truth.direct_causes) {
    if (report.found.count(cause)) {
      ++hits;
    } else {
      report.missed.insert(cause);
    }
  }
  report.recall = static_cast<double>(hits) /
                  static_cast<double>(truth.direct_causes.size());
  report.context_recall = context_recall(tree, truth);
  return report;
}

std::optional<double> context_recall(const CausalDecisionTree& tree,
                                     const GroundTruth& truth) {
  size_t total = 0;
  size_t hits = 0;
  for (const auto& ct : truth.context_truths) {
    for (const auto& cause : ct.causes) {
      ++total;
      std::vector<std::pair<std::string, uint8_t>> path;
      if (FoundInContext(tree.root, tree.attribute_names, path, ct, cause)) ++hits;
    }
  }
  if (total == 0) return std::nullopt;
  return static_cast<double>(hits) / static_cast<double>(total);
}

std::string truth_to_json(const GroundTruth& truth) {
  Json doc;
  doc["outcome"] = truth.outcome;
  doc["causes"] = truth.direct_causes;
  Json contexts = Json::array();
  for (const auto& ct : truth.context_truths) {
    Json context = Json::object();
    for (const auto& [name, value] : ct.context) context[name] = value;
    contexts.push_back({{"context", context}, {"causes", ct.causes}});
  }
  doc["contexts"] = contexts;
  return doc.dump(2) + "\n";
}

GroundTruth parse_truth(std::string_view json) {
  try {
    const Json doc = Json::parse(json);
    GroundTruth truth;
    truth.outcome = doc.at("outcome").get<std::string>();
    truth.direct_causes = doc.at("causes").get<std::set<std::string>>();
    if (doc.contains("contexts")) {
      for (const auto& c : doc.at("contexts")) {
        ContextTruth ct;
        for (const auto& [name, value] : c.at("context").items()) {
          ct.context.emplace_back(name, value.get<uint8_t>());
        }
        ct.causes = c.at("causes").get<std::set<std::string>>();
        truth.context_truths.push_back(std::move(ct));
      }
    }
    return truth;
  } catch (const Json::exception& e) {
    throw DataError(std::string("malformed ground truth JSON: ") + e.what());
  }
}

std::string report_to_json(const EvalReport& report) {
  Json doc;
  doc["recall"] = report.recall;
  doc["found"] = report.found;
  doc["missed"] = report.missed;
  doc["context_recall"] =
      report.context_recall ? Json(*report.context_recall) : Json(nullptr);
  return doc.dump(2) + "\n";
}

}  // namespace cdt
