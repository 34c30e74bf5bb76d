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

// Command line front end: run, sweep, validate, graph gen, graph check.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "privlearn/config.h"
#include "privlearn/error.h"
#include "privlearn/graph.h"
#include "privlearn/runner.h"
#include "privlearn/transition.h"

namespace {

using privlearn::ExperimentConfig;

void PrintConditions(const privlearn::ConditionReport& report) {
  std::printf("sigma >= 11:          %s\n", report.sigma_ok ? "ok" : "VIOLATED");
  std::printf("6 mu <= delta^2:      %s\n",
              report.exploration_ok ? "ok" : "VIOLATED");
  std::printf("ln N < g(N) < N:      %s\n", report.g_range_ok ? "ok" : "VIOLATED");
  std::printf("h = 16 sigma/(1-beta): %s\n",
              report.theoretical_h ? "ok" : "no (outside theoretical constants)");
  for (const std::string& w : report.warnings) {
    std::printf("warning: %s\n", w.c_str());
  }
}

int RunCommand(const std::string& config_path,
               const std::vector<std::uint64_t>& seeds,
               const std::string& out_dir) {
  ExperimentConfig cfg = privlearn::LoadConfig(config_path);
  if (!seeds.empty()) cfg.seeds = seeds;
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  const privlearn::ExperimentResult result = privlearn::RunExperiment(cfg);
  for (const std::string& w : result.conditions.warnings) {
    std::fprintf(stderr, "warning: %s\n", w.c_str());
  }
  for (const privlearn::SeedSummary& s : result.seeds) {
    std::printf("seed %llu: gap %.6g, walk length %zu, final running regret %.6g\n",
                static_cast<unsigned long long>(s.seed), s.spectral_gap,
                s.walk_length, s.final_running_regret);
  }
  std::printf("manifest: %s\n", result.manifest_path.c_str());
  return 0;
}

int SweepCommand(const std::string& config_path, const std::string& axis,
                 const std::vector<std::string>& values,
                 const std::string& out_dir) {
  ExperimentConfig cfg = privlearn::LoadConfig(config_path);
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  const privlearn::SweepResult sweep = privlearn::RunSweep(cfg, axis, values);
  for (std::size_t k = 0; k < sweep.values.size(); ++k) {
    const auto& traces = sweep.results[k].traces;
    double mean = 0.0;
    for (const auto& t : traces) mean += t.RunningRegret();
    if (!traces.empty()) mean /= static_cast<double>(traces.size());
    std::printf("%s=%s: mean final running regret %.6g\n", axis.c_str(),
                sweep.values[k].c_str(), mean);
  }
  std::printf("comparison: %s\n", sweep.comparison_path.c_str());
  return 0;
}

int ValidateCommand(const std::string& config_path) {
  const ExperimentConfig cfg = privlearn::LoadConfig(config_path);
  const privlearn::ConditionReport report = privlearn::CheckConditions(cfg);
  std::printf("n %zu, m %zu, g(N) %.6g, h %.6g, walks per agent %zu\n", cfg.n,
              cfg.m(), cfg.GValue(), cfg.HValue(), cfg.WalksPerAgent());
  PrintConditions(report);
  return report.all_ok() ? 0 : 3;
}

int GraphGenCommand(const std::string& generator, std::size_t n, double p,
                    std::size_t degree, std::uint64_t seed,
                    const std::string& out) {
  privlearn::Graph g =
      generator == "erdos_renyi"
          ? privlearn::GenerateErdosRenyi(n, p, seed)
          : generator == "random_regular"
                ? privlearn::GenerateRandomRegular(n, degree, seed)
                : throw privlearn::Error(
                      privlearn::ErrorCode::kInvalidArgument,
                      "generator must be erdos_renyi or random_regular");
  if (out.empty() || out == "-") {
    privlearn::WriteEdgeList(std::cout, g);
  } else {
    const std::filesystem::path parent = std::filesystem::path(out).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    privlearn::SaveEdgeList(out, g);
    std::printf("wrote %zu nodes, %zu edges to %s\n", g.num_nodes(),
                g.num_edges(), out.c_str());
  }
  return 0;
}

int GraphCheckCommand(const std::string& path) {
  const privlearn::Graph g = privlearn::LoadEdgeList(path);
  const auto degrees = g.degrees();
  const auto [lo, hi] = std::minmax_element(degrees.begin(), degrees.end());
  double mean = 0.0;
  for (auto d : degrees) mean += static_cast<double>(d);
  mean /= static_cast<double>(degrees.size());
  std::printf("nodes %zu\nedges %zu\ndegree min %zu mean %.4f max %zu\n",
              g.num_nodes(), g.num_edges(), static_cast<std::size_t>(*lo), mean,
              static_cast<std::size_t>(*hi));
  std::printf("connected yes\nbipartite no\n");
  const privlearn::TransitionModel tm = privlearn::MhTransition(g);
  if (g.num_nodes() <= privlearn::SpectralOptions{}.dense_threshold) {
    const double gap = privlearn::SpectralGap(tm);
    std::printf("spectral gap %.9g\nwalk length %zu\n", gap,
                privlearn::WalkLength(g.num_nodes(), gap, tm.alpha));
  } else {
    std::printf("spectral gap skipped (n above dense threshold)\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Privacy-preserving social learning simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::vector<std::uint64_t> seeds;
  CLI::App* run = app.add_subcommand("run", "Run an experiment");
  run->add_option("--config", config_path, "Config file")->required();
  run->add_option("--seeds", seeds, "Seeds overriding the config")->delimiter(',');
  run->add_option("--out", out_dir, "Output directory overriding the config");

  std::string axis;
  std::vector<std::string> values;
  CLI::App* sweep = app.add_subcommand("sweep", "Sweep one parameter");
  sweep->add_option("--config", config_path, "Config file")->required();
  sweep->add_option("--axis", axis, "n, g_choice, m or epsilon")
      ->required()
      ->check(CLI::IsMember({"n", "g_choice", "m", "epsilon"}));
  sweep->add_option("--values", values, "Comma separated values")
      ->required()
      ->delimiter(',');
  sweep->add_option("--out", out_dir, "Output directory overriding the config");

  CLI::App* validate =
      app.add_subcommand("validate", "Check the regret-bound conditions");
  validate->add_option("--config", config_path, "Config file")->required();

  CLI::App* graph = app.add_subcommand("graph", "Graph utilities");
  graph->require_subcommand(1);
  std::string generator = "random_regular";
  std::size_t n = 256;
  double p = 0.1;
  std::size_t degree = 8;
  std::uint64_t seed = 1;
  std::string graph_out;
  CLI::App* gen = graph->add_subcommand("gen", "Generate a graph edge list");
  gen->add_option("--generator", generator, "erdos_renyi or random_regular")
      ->check(CLI::IsMember({"erdos_renyi", "random_regular"}));
  gen->add_option("--n", n, "Number of nodes");
  gen->add_option("--p", p, "Erdos-Renyi edge probability");
  gen->add_option("--degree", degree, "Random regular degree");
  gen->add_option("--seed", seed, "Seed");
  gen->add_option("--out", graph_out, "Output edge list (default stdout)");
  std::string edges_path;
  CLI::App* check = graph->add_subcommand("check", "Validate an edge list");
  check->add_option("--edges", edges_path, "Edge list file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return RunCommand(config_path, seeds, out_dir);
    if (*sweep) return SweepCommand(config_path, axis, values, out_dir);
    if (*validate) return ValidateCommand(config_path);
    if (*gen) return GraphGenCommand(generator, n, p, degree, seed, graph_out);
    if (*check) return GraphCheckCommand(edges_path);
  } catch (const privlearn::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 1;
}
