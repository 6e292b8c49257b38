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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cdt/cli.h"
#include "cdt/render.h"
#include "cdt/synth.h"
#include "test_util.h"

namespace cdt {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Cdt(std::vector<std::string> args) {
  args.insert(args.begin(), "cdt");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("cdt_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string Path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

const std::string kTitanic = testing::DataPath("titanic.csv");

TEST_F(Cli, BuildTitanicJson) {
  const Result r = Cdt({"build", kTitanic, "--outcome", "survived", "--weight-column",
                        "count", "--format", "json", "--out", Path("t.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const CausalDecisionTree t = parse_tree(Slurp(Path("t.json")));
  EXPECT_EQ(t.attribute_names[t.root->branch().attribute], "female");
  const std::string audit = Slurp(Path("t.json.audit.tsv"));
  EXPECT_EQ(audit.rfind("context\t", 0), 0u);
}

TEST_F(Cli, BuildToStdoutWithAuditOnStderr) {
  const Result r = Cdt({"build", kTitanic, "--outcome", "survived", "--weight-column", "count"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.rfind("female", 0), 0u) << r.out;
  EXPECT_NE(r.err.find("thirdClass"), std::string::npos);
}

TEST_F(Cli, ByteIdenticalReruns) {
  for (const char* fmt : {"text", "json", "dot"}) {
    const std::vector<std::string> args{"build", kTitanic, "--outcome", "survived",
                                        "--weight-column", "count", "--format", fmt};
    EXPECT_EQ(Cdt(args).out, Cdt(args).out) << fmt;
  }
}

TEST_F(Cli, OneRecordGivesEmptyTree) {
  std::ofstream(Path("one.csv")) << "a,b,y\n1,0,1\n";
  const Result r = Cdt({"build", Path("one.csv"), "--outcome", "y"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "1  (1)\n");
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(Cdt({}).code, kExitUsage);
  EXPECT_EQ(Cdt({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(Cdt({"build", kTitanic}).code, kExitUsage);  // no --outcome
  EXPECT_EQ(Cdt({"build", kTitanic, "--outcome", "survived", "--bogus"}).code, kExitUsage);
  EXPECT_EQ(Cdt({"build", kTitanic, "--outcome", "survived", "--alpha", "1.5"}).code, kExitUsage);
  EXPECT_EQ(Cdt({"build", kTitanic, "--outcome", "survived", "--max-height", "0"}).code,
            kExitUsage);
  EXPECT_EQ(Cdt({"build", kTitanic, "--outcome", "survived", "--format", "xml"}).code,
            kExitUsage);
  EXPECT_EQ(Cdt({"synth", "--kind", "random-bn", "--degree", "9", "--out", Path("x")}).code,
            kExitUsage);
  EXPECT_EQ(Cdt({"--help"}).code, kExitOk);
}

TEST_F(Cli, DataErrors) {
  EXPECT_EQ(Cdt({"build", Path("missing.csv"), "--outcome", "y"}).code, kExitData);
  std::ofstream(Path("bad.csv")) << "a,y\n1,1\n2,0\n";
  const Result bad = Cdt({"build", Path("bad.csv"), "--outcome", "y"});
  EXPECT_EQ(bad.code, kExitData);
  EXPECT_NE(bad.err.find("line 3"), std::string::npos) << bad.err;
  EXPECT_EQ(Cdt({"build", kTitanic, "--outcome", "nope", "--weight-column", "count"}).code,
            kExitData);
  EXPECT_EQ(Cdt({"build", kTitanic, "--outcome", "survived", "--weight-column", "count",
                 "--out", Path("no/such/dir/t.txt")}).code,
            kExitData);
  EXPECT_EQ(Cdt({"build", kTitanic, "--outcome", "survived", "--rules", Path("none.rules")}).code,
            kExitData);
}

TEST_F(Cli, Baseline) {
  const std::string fig2 = testing::DataPath("fig2a.csv");
  const Result gain = Cdt({"baseline", fig2, "--outcome", "Y", "--weight-column", "count"});
  ASSERT_EQ(gain.code, kExitOk) << gain.err;
  EXPECT_EQ(gain.out.rfind("B", 0), 0u) << gain.out;
  const Result disc = Cdt({"baseline", fig2, "--outcome", "Y", "--weight-column", "count",
                           "--criterion", "discriminative", "--format", "json"});
  ASSERT_EQ(disc.code, kExitOk) << disc.err;
  EXPECT_EQ(parse_plain_tree(disc.out).criterion, SplitCriterion::kDiscriminative);
  EXPECT_EQ(Cdt({"baseline", fig2, "--outcome", "Y", "--criterion", "gini"}).code, kExitUsage);
}

TEST_F(Cli, SynthBuildEvalPipeline) {
  const std::string prefix = Path("s");
  ASSERT_EQ(Cdt({"synth", "--kind", "single-edge", "--vars", "10", "--rows", "3000",
                 "--seed", "4", "--out", prefix}).code,
            kExitOk);
  LoadOptions o;
  o.outcome = "v10";
  o.weight_column = "count";
  EXPECT_EQ(load_csv(prefix + ".csv", o).total_weight(), 3000u);
  const GroundTruth truth = parse_truth(Slurp(prefix + ".truth.json"));
  EXPECT_EQ(truth.direct_causes, (std::set<std::string>{"v1"}));

  ASSERT_EQ(Cdt({"build", prefix + ".csv", "--outcome", "v10", "--weight-column", "count",
                 "--format", "json", "--out", Path("tree.json")}).code,
            kExitOk);
  const Result e = Cdt({"eval", Path("tree.json"), "--truth", prefix + ".truth.json"});
  ASSERT_EQ(e.code, kExitOk) << e.err;
  EXPECT_NE(e.out.find("\"recall\": 1.0"), std::string::npos) << e.out;
  EXPECT_EQ(Cdt({"eval", Path("tree.json"), "--truth", Path("none.json")}).code, kExitData);
}

TEST_F(Cli, SynthIsDeterministic) {
  for (const char* kind : {"single-edge", "planted-context", "random-bn", "noise"}) {
    ASSERT_EQ(Cdt({"synth", "--kind", kind, "--rows", "200", "--seed", "3", "--out", Path("a")}).code,
              kExitOk) << kind;
    ASSERT_EQ(Cdt({"synth", "--kind", kind, "--rows", "200", "--seed", "3", "--out", Path("b")}).code,
              kExitOk);
    EXPECT_EQ(Slurp(Path("a.csv")), Slurp(Path("b.csv"))) << kind;
  }
}

TEST_F(Cli, BenchWritesCsv) {
  const Result r = Cdt({"bench", "--vars", "8", "--rows", "500,1000", "--reps", "1",
                        "--kernels", "scalar", "--out", Path("bench.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const std::string csv = Slurp(Path("bench.csv"));
  EXPECT_EQ(csv.rfind("num_vars,n,wall_ms\n", 0), 0u) << csv;
  EXPECT_NE(csv.find("\n8,500,"), std::string::npos) << csv;
  EXPECT_NE(csv.find("\n8,1000,"), std::string::npos) << csv;
  EXPECT_EQ(Cdt({"bench", "--kernels", "sse9"}).code, kExitUsage);
}

}  // namespace
}  // namespace cdt
