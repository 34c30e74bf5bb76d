// Copyright 2026 The privlearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "privlearn/runner.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>

#include "json.hpp"
#include "privlearn/environment.h"
#include "privlearn/error.h"
#include "privlearn/oracle.h"

namespace privlearn {
namespace {

namespace fs = std::filesystem;

ExperimentConfig SmallConfig(const std::string& out_name) {
  ExperimentConfig cfg = ParseConfig(R"({
    "graph": {"generator": "random_regular", "degree": 5},
    "n": 40,
    "options": {"etas": [0.9, 0.6, 0.4]},
    "protocol": {"epsilon": 1.0, "beta": 0.55, "mu": 0.01},
    "dissemination": {"sigma": 15, "h": 1, "g": 10},
    "run": {"rounds": 8, "seeds": [11, 12]}})");
  cfg.output_dir = (fs::path(::testing::TempDir()) / out_name).string();
  fs::remove_all(cfg.output_dir);
  return cfg;
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(GitBlobHashTest, MatchesGit) {
  // printf 'hello\n' | git hash-object --stdin
  EXPECT_EQ(GitBlobHash("hello\n"), "ce013625030ba8dba906f756967f9e9ca394464a");
  // git hash-object /dev/null
  EXPECT_EQ(GitBlobHash(""), "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
}

TEST(RunnerTest, ZeroRoundsWritesManifestAndEmptyTraces) {
  ExperimentConfig cfg = SmallConfig("zero_rounds");
  cfg.rounds = 0;
  const ExperimentResult result = RunExperiment(cfg);
  ASSERT_EQ(result.traces.size(), 2u);
  EXPECT_EQ(result.traces[0].num_rounds(), 0u);
  const fs::path out(cfg.output_dir);
  EXPECT_EQ(ReadFile(out / "trace_seed11.csv"),
            "round,q_1,q_2,q_3,d_total,slots,messages,running_regret\n");
  const auto manifest = nlohmann::json::parse(ReadFile(out / "manifest.json"));
  EXPECT_TRUE(manifest["complete"].get<bool>());
  EXPECT_EQ(manifest["total_privacy_loss"].get<double>(), 0.0);
}

TEST(RunnerTest, ManifestContents) {
  const ExperimentConfig cfg = SmallConfig("manifest");
  const ExperimentResult result = RunExperiment(cfg);
  const auto manifest =
      nlohmann::json::parse(ReadFile(fs::path(cfg.output_dir) / "manifest.json"));
  EXPECT_TRUE(manifest["complete"].get<bool>());
  EXPECT_EQ(manifest["config_hash"].get<std::string>(),
            GitBlobHash(ConfigToJson(cfg)));
  EXPECT_EQ(result.config_hash, manifest["config_hash"].get<std::string>());
  EXPECT_TRUE(manifest["outside_theoretical_constants"].get<bool>());
  EXPECT_FALSE(manifest["conditions"]["theoretical_h"].get<bool>());
  EXPECT_TRUE(manifest["conditions"]["sigma_ge_11"].get<bool>());
  EXPECT_FALSE(manifest["warnings"].empty());
  EXPECT_DOUBLE_EQ(manifest["total_privacy_loss"].get<double>(), 8.0);
  EXPECT_EQ(manifest["walks_per_agent"].get<std::size_t>(), 10u);
  ASSERT_EQ(manifest["runs"].size(), 2u);
  EXPECT_TRUE(manifest["runs"][0]["gap_exact"].get<bool>());
  EXPECT_GE(manifest["runs"][0]["walk_length"].get<std::size_t>(), 1u);
  EXPECT_EQ(ParseConfig(manifest["config"].dump()), cfg);
}

TEST(RunnerTest, ByteIdenticalOutputs) {
  ExperimentConfig a = SmallConfig("det_a");
  ExperimentConfig b = SmallConfig("det_b");
  RunExperiment(a);
  RunExperiment(b);
  for (const char* name : {"trace_seed11.csv", "trace_seed12.csv", "aggregate.csv"}) {
    const std::string x = ReadFile(fs::path(a.output_dir) / name);
    EXPECT_FALSE(x.empty());
    EXPECT_EQ(x, ReadFile(fs::path(b.output_dir) / name)) << name;
  }
}

TEST(RunnerTest, PerRoundInvariants) {
  const ExperimentConfig cfg = SmallConfig("invariants");
  const RunTrace trace = RunSingle(cfg, 11);
  ASSERT_EQ(trace.num_rounds(), 8u);
  double increments = 0.0;
  for (const RoundMetrics& r : trace.rounds()) {
    EXPECT_EQ(std::accumulate(r.s.begin(), r.s.end(), std::size_t{0}), 40u);
    EXPECT_EQ(std::accumulate(r.d.begin(), r.d.end(), std::size_t{0}), r.d_total);
    EXPECT_LE(r.d_total, 40u);
    if (r.d_total > 0) {
      EXPECT_NEAR(std::accumulate(r.q.begin(), r.q.end(), 0.0), 1.0, 1e-12);
    }
    EXPECT_GT(r.slots, 0u);
    EXPECT_FALSE(r.truncated);
    increments += r.regret_increment;
  }
  EXPECT_NEAR(trace.RunningRegret(), 0.9 - increments / 8, 1e-12);
  EXPECT_DOUBLE_EQ(trace.TotalPrivacyLoss(), 8.0);
}

TEST(RunnerTest, SeedsShareTopologyAcrossParameters) {
  ExperimentConfig a = SmallConfig("topo");
  ExperimentConfig b = a;
  b.protocol.epsilon = 0.25;
  b.h_override = 3.0;
  EXPECT_EQ(PrepareRun(a, 11).graph, PrepareRun(b, 11).graph);
  EXPECT_FALSE(PrepareRun(a, 11).graph == PrepareRun(a, 12).graph);
}

TEST(RunnerTest, WalkLengthSources) {
  ExperimentConfig cfg = SmallConfig("walk");
  cfg.dense_threshold = 16;
  const RunSetup fallback = PrepareRun(cfg, 11);
  EXPECT_FALSE(fallback.gap_exact);
  EXPECT_EQ(fallback.walk_length, 24u);  // 4 * ceil(log2 40)
  cfg.gap_estimate = 0.5;
  const RunSetup estimated = PrepareRun(cfg, 11);
  EXPECT_EQ(estimated.walk_length,
            WalkLength(40, 0.5, 1.0 / (40.0 * 40.0 * 40.0)));
}

TEST(RunnerTest, EdgeListNodeCountMismatch) {
  ExperimentConfig cfg = SmallConfig("edges");
  const fs::path path = fs::path(::testing::TempDir()) / "runner_tri.edges";
  {
    std::ofstream out(path);
    out << "0 1\n1 2\n2 0\n";
  }
  cfg.graph.kind = GraphKind::kEdgeList;
  cfg.graph.path = path.string();
  EXPECT_THROW(PrepareRun(cfg, 1), Error);
  cfg.n = 3;
  EXPECT_EQ(PrepareRun(cfg, 1).graph.num_edges(), 3u);
}

TEST(RunnerTest, GreedySanity) {
  ExperimentConfig cfg = ParseConfig(R"({
    "graph": {"generator": "random_regular", "degree": 4}, "n": 30,
    "options": {"etas": [1.0, 0.0]},
    "protocol": {"epsilon": "infinity", "beta": 1.0, "mu": 0.0},
    "dissemination": {"h": 1, "g": 8}, "run": {"rounds": 10, "seeds": [1]}})");
  const RunTrace trace = RunSingle(cfg, 1);
  for (const RoundMetrics& r : trace.rounds()) {
    if (r.round >= 2) {
      EXPECT_EQ(r.regret_increment, 1.0);
    }
    EXPECT_EQ(r.q[0], 1.0);
  }
}

// Without privacy the population share tracks the multiplicative-weights
// dynamics driven by the same quality draws, more closely as n grows.
double MaxMwuGap(std::size_t n) {
  ExperimentConfig cfg = ParseConfig(R"({
    "graph": {"generator": "random_regular", "degree": 6},
    "options": {"etas": [0.9, 0.6]},
    "protocol": {"epsilon": "infinity", "beta": 0.6, "mu": 0.01},
    "dissemination": {"h": 1, "g": 32, "dense_threshold": 64},
    "run": {"rounds": 15}})");
  cfg.n = n;
  const OptionSet options(cfg.etas);
  double total = 0.0;
  for (std::uint64_t seed : {1, 2, 3}) {
    const RunTrace trace = RunSingle(cfg, seed);
    std::vector<std::vector<std::uint8_t>> phi;
    for (std::size_t r = 1; r <= cfg.rounds; ++r) {
      phi.push_back(DrawQualities(options, r, seed).phi);
    }
    const auto p = oracle::MwuReference(phi, cfg.protocol);
    double worst = 0.0;
    for (std::size_t r = 1; r <= cfg.rounds; ++r) {
      worst = std::max(worst, std::abs(p[r][0] - trace.rounds()[r - 1].q[0]));
    }
    total += worst;
  }
  return total / 3.0;
}

TEST(RunnerTest, MwuCouplingImprovesWithN) {
  const double small = MaxMwuGap(128);
  const double medium = MaxMwuGap(512);
  const double large = MaxMwuGap(2048);
  std::printf("max |P - Q|: n=128 %.4f, n=512 %.4f, n=2048 %.4f\n", small, medium,
              large);
  EXPECT_GT(small, medium);
  EXPECT_GT(medium, large);
}

TEST(SweepTest, ApplyValue) {
  const ExperimentConfig base = SmallConfig("apply");
  EXPECT_EQ(ApplySweepValue(base, "n", "64").n, 64u);
  EXPECT_EQ(ApplySweepValue(base, "g_choice", "sqrt").g_choice, GChoice::kSqrt);
  EXPECT_DOUBLE_EQ(ApplySweepValue(base, "g_choice", "7").GValue(), 7.0);
  const ExperimentConfig m5 = ApplySweepValue(base, "m", "5");
  ASSERT_EQ(m5.m(), 5u);
  EXPECT_DOUBLE_EQ(m5.etas.front(), 0.9);
  EXPECT_DOUBLE_EQ(m5.etas.back(), 0.4);
  EXPECT_TRUE(std::isinf(ApplySweepValue(base, "epsilon", "infinity").protocol.epsilon));
  EXPECT_EQ(ApplySweepValue(base, "epsilon", "0.5").output_dir,
            (fs::path(base.output_dir) / "epsilon=0.5").string());
  EXPECT_THROW(ApplySweepValue(base, "beta", "0.6"), Error);
  EXPECT_THROW(ApplySweepValue(base, "n", "many"), Error);
  EXPECT_THROW(ApplySweepValue(base, "epsilon", "-1"), Error);
}

TEST(SweepTest, WritesComparisonFile) {
  const ExperimentConfig base = SmallConfig("sweep");
  const SweepResult sweep = RunSweep(base, "epsilon", {"infinity", "0.5"});
  ASSERT_EQ(sweep.results.size(), 2u);
  std::istringstream csv(ReadFile(sweep.comparison_path));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "value,round,mean_running_regret,std_running_regret");
  std::size_t rows = 0;
  while (std::getline(csv, line)) ++rows;
  EXPECT_EQ(rows, 16u);
  EXPECT_TRUE(fs::exists(fs::path(base.output_dir) / "epsilon=infinity" /
                         "manifest.json"));
  // Shared seeds give shared topologies across sweep values.
  EXPECT_EQ(sweep.results[0].seeds[0].walk_length,
            sweep.results[1].seeds[0].walk_length);
}

}  // namespace
}  // namespace privlearn
