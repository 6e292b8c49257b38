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

#include "cdt/cli.h"

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "cdt/baseline.h"
#include "cdt/bench.h"
#include "cdt/cdt.h"
#include "cdt/dataset.h"
#include "cdt/kernels.h"
#include "cdt/render.h"
#include "cdt/stats.h"
#include "cdt/synth.h"

namespace cdt {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << contents;
  out.flush();
  if (!out) throw DataError("failed writing '" + path + "'");
}

void Emit(const RunConfig& config, const std::string& contents, std::ostream& out) {
  if (config.out) {
    WriteFile(*config.out, contents);
  } else {
    out << contents;
  }
}

TreeFormat Format(const RunConfig& config) {
  const auto f = parse_format(config.format);
  if (!f) throw UsageError("unknown format '" + config.format + "'");
  return *f;
}

void CheckCommon(const RunConfig& config) {
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw UsageError("--alpha must lie in (0, 1)");
  }
  if (config.h_max < 1) throw UsageError("--max-height must be >= 1");
  if (config.cap < 1 || config.cap > kMaxStratifying + 1) {
    throw UsageError("--max-strat-attrs must lie in [1, " +
                     std::to_string(kMaxStratifying + 1) + "]");
  }
  if (!(config.min_gain >= 0.0)) throw UsageError("--min-gain must be >= 0");
}

BinaryDataset Load(const RunConfig& config, std::ostream& err) {
  if (config.outcome.empty()) throw UsageError("--outcome is required");
  LoadOptions options;
  options.outcome = config.outcome;
  options.weight_column = config.weight_column;
  if (config.rules) options.rules = read_rules(*config.rules);
  LoadStats stats;
  BinaryDataset data = load_csv(config.input, options, &stats);
  if (stats.rows_dropped > 0) {
    err << "dropped " << stats.rows_dropped << " of " << stats.rows_read
        << " rows with missing values\n";
  }
  return data;
}

int Build(const RunConfig& config, std::ostream& out, std::ostream& err) {
  CheckCommon(config);
  const TreeFormat format = Format(config);
  const BinaryDataset data = Load(config, err);
  CdtOptions options;
  options.alpha = config.alpha;
  options.h_max = config.h_max;
  options.cap = config.cap;
  options.prune = config.prune;
  const CausalDecisionTree tree = tree_construct(data, options);
  Emit(config, render(tree, format), out);
  const std::string audit = render_audit(tree);
  if (config.out) {
    WriteFile(*config.out + ".audit.tsv", audit);
  } else {
    err << audit;
  }
  return kExitOk;
}

int Baseline(const RunConfig& config, std::ostream& out, std::ostream& err) {
  CheckCommon(config);
  const TreeFormat format = Format(config);
  SplitCriterion criterion;
  if (config.criterion == "gain") {
    criterion = SplitCriterion::kInformationGain;
  } else if (config.criterion == "discriminative") {
    criterion = SplitCriterion::kDiscriminative;
  } else {
    throw UsageError("unknown criterion '" + config.criterion + "'");
  }
  const BinaryDataset data = Load(config, err);
  const PlainTree tree = info_gain_tree(data, config.h_max, config.min_gain, criterion);
  Emit(config, render(tree, format), out);
  return kExitOk;
}

int Synth(const RunConfig& config, std::ostream& out) {
  if (!config.out) throw UsageError("synth needs --out PREFIX");
  std::optional<SyntheticData> synth;
  std::optional<BinaryDataset> noise;
  try {
    if (config.kind == "noise") {
      noise = gen_noise(config.vars, config.rows, config.seed);
    } else if (config.kind == "single-edge") {
      synth = gen_single_edge(config.vars, config.effect, config.seed, config.rows);
    } else if (config.kind == "planted-context") {
      synth = gen_planted_context(config.vars, config.effect, config.seed, config.rows);
    } else if (config.kind == "random-bn") {
      synth = gen_random_bn(config.vars, config.degree, config.seed, config.rows);
    } else {
      throw UsageError("unknown --kind '" + config.kind + "'");
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const BinaryDataset& data = synth ? synth->data : *noise;
  std::ostringstream csv;
  write_csv(data, csv);
  WriteFile(*config.out + ".csv", csv.str());
  out << "wrote " << *config.out << ".csv (outcome " << data.outcome_name()
      << ", weight column " << weight_column_name(data) << ")\n";
  if (synth) {
    WriteFile(*config.out + ".truth.json", truth_to_json(synth->truth));
    out << "wrote " << *config.out << ".truth.json\n";
  }
  return kExitOk;
}

int Eval(const RunConfig& config, std::ostream& out) {
  if (config.truth.empty()) throw UsageError("eval needs --truth PATH");
  const CausalDecisionTree tree = parse_tree(ReadFile(config.input));
  const GroundTruth truth = parse_truth(ReadFile(config.truth));
  if (truth.direct_causes.empty()) throw DataError("ground truth has no causes");
  Emit(config, report_to_json(eval_recall(tree, truth)), out);
  return kExitOk;
}

int Bench(const RunConfig& config, std::ostream& out, std::ostream& err) {
  CheckCommon(config);
  const kernels::KernelTable* table = kernels::by_name(config.kernels);
  if (table == nullptr) throw UsageError("kernels '" + config.kernels + "' unavailable");
  const kernels::ScopedOverride use(*table);
  BenchOptions options;
  options.num_vars = config.bench_vars;
  options.sizes = config.bench_rows;
  options.repetitions = config.repetitions;
  options.degree = config.bench_degree;
  options.seed = config.seed;
  options.tree.alpha = config.alpha;
  options.tree.h_max = config.h_max;
  options.tree.cap = config.cap;
  options.tree.prune = config.prune;
  std::vector<BenchCell> cells;
  try {
    cells = run_bench(options);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  err << "kernels: " << table->name << "\n";
  Emit(config, bench_to_csv(cells), out);
  return kExitOk;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.command == "build") return Build(config, out, err);
    if (config.command == "baseline") return Baseline(config, out, err);
    if (config.command == "synth") return Synth(config, out);
    if (config.command == "eval") return Eval(config, out);
    if (config.command == "bench") return Bench(config, out, err);
    throw UsageError("unknown command '" + config.command + "'");
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  RunConfig config;
  CLI::App app{"Causal decision trees from binary data"};
  app.require_subcommand(1);

  auto add_tree_flags = [&](CLI::App* sub) {
    sub->add_option("input", config.input, "Input CSV")->required();
    sub->add_option("--outcome", config.outcome, "Outcome column")->required();
    sub->add_option("--weight-column", config.weight_column, "Integer weight column");
    sub->add_option("--rules", config.rules, "Binarization rules file");
    sub->add_option("--max-height", config.h_max, "Maximum branch levels");
    sub->add_option("--format", config.format, "text | json | dot");
    sub->add_option("--out", config.out, "Output path (default stdout)");
  };

  CLI::App* build = app.add_subcommand("build", "Build a causal decision tree");
  add_tree_flags(build);
  build->add_option("--alpha", config.alpha, "Significance level");
  build->add_option("--max-strat-attrs", config.cap, "Most correlated attributes kept");
  build->add_flag("--no-prune", "Keep sibling leaves with equal labels")
      ->each([&](const std::string&) { config.prune = false; });

  CLI::App* baseline = app.add_subcommand("baseline", "Build the plain decision tree");
  add_tree_flags(baseline);
  baseline->add_option("--min-gain", config.min_gain, "Smallest split score");
  baseline->add_option("--criterion", config.criterion, "gain | discriminative");

  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
  synth->add_option("--kind", config.kind,
                    "single-edge | planted-context | random-bn | noise");
  synth->add_option("--vars", config.vars, "Variables (noise: attributes)");
  synth->add_option("--rows", config.rows, "Records");
  synth->add_option("--degree", config.degree, "random-bn outcome degree");
  synth->add_option("--effect", config.effect, "Logistic effect strength");
  synth->add_option("--seed", config.seed, "Random seed");
  synth->add_option("--out", config.out, "Output prefix")->required();

  CLI::App* eval = app.add_subcommand("eval", "Score a tree against ground truth");
  eval->add_option("input", config.input, "Tree JSON")->required();
  eval->add_option("--truth", config.truth, "Ground truth JSON")->required();
  eval->add_option("--out", config.out, "Report path (default stdout)");

  CLI::App* bench = app.add_subcommand("bench", "Time tree construction");
  bench->add_option("--vars", config.bench_vars, "Attribute counts")->delimiter(',');
  bench->add_option("--rows", config.bench_rows, "Record counts")->delimiter(',');
  bench->add_option("--reps", config.repetitions, "Repetitions per cell");
  bench->add_option("--degree", config.bench_degree, "Outcome degree");
  bench->add_option("--seed", config.seed, "Random seed");
  bench->add_option("--alpha", config.alpha, "Significance level");
  bench->add_option("--max-height", config.h_max, "Maximum branch levels");
  bench->add_option("--max-strat-attrs", config.cap, "Most correlated attributes kept");
  bench->add_option("--kernels", config.kernels, "auto | scalar | avx2");
  bench->add_option("--out", config.out, "CSV path (default stdout)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  for (CLI::App* sub : app.get_subcommands()) config.command = sub->get_name();
  return run(config, out, err);
}

}  // namespace cdt
