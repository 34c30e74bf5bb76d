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

#ifndef PRIVLEARN_RUNNER_H_
#define PRIVLEARN_RUNNER_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "privlearn/config.h"
#include "privlearn/graph.h"
#include "privlearn/metrics.h"
#include "privlearn/transition.h"

namespace privlearn {

// Topology and walk parameters resolved for one seed.
struct RunSetup {
  Graph graph;
  TransitionModel transition;
  double gap = 0.0;
  bool gap_exact = false;
  std::size_t walk_length = 0;
  std::size_t walks_per_agent = 0;
};

// The graph for `seed` depends only on (graph spec, n, seed), so runs that
// share a seed share a topology.
RunSetup PrepareRun(const ExperimentConfig& config, std::uint64_t seed);

// Executes rounds 1..R for one seed. Each round runs perturb -> disseminate ->
// sample -> adopt, then records popularity, selections, slots, messages and
// the regret increment sum_j Q_j^{r-1} Phi_j^r.
RunTrace RunSingle(const ExperimentConfig& config, std::uint64_t seed,
                   const RunSetup& setup);
RunTrace RunSingle(const ExperimentConfig& config, std::uint64_t seed);

struct SeedSummary {
  std::uint64_t seed = 0;
  double spectral_gap = 0.0;
  bool gap_exact = false;
  std::size_t walk_length = 0;
  double final_running_regret = 0.0;
  std::size_t truncated_rounds = 0;
};

struct ExperimentResult {
  std::vector<RunTrace> traces;
  std::vector<SeedSummary> seeds;
  ConditionReport conditions;
  std::string config_hash;
  std::string manifest_path;
};

// Runs every configured seed. When `write_outputs` is set, writes into
// config.output_dir: trace_seed<seed>.csv per seed, aggregate.csv and
// manifest.json (marked incomplete until all seeds finish).
ExperimentResult RunExperiment(const ExperimentConfig& config,
                               bool write_outputs = true);

// Sweep axes: n, g_choice, m, epsilon.
ExperimentConfig ApplySweepValue(const ExperimentConfig& base,
                                 const std::string& axis,
                                 const std::string& value);

struct SweepResult {
  std::vector<std::string> values;
  std::vector<ExperimentResult> results;
  std::string comparison_path;
};

// Runs each value with the base config's seeds into <output_dir>/<axis>=<value>
// and writes <output_dir>/sweep_<axis>.csv with header
// value,round,mean_running_regret,std_running_regret.
SweepResult RunSweep(const ExperimentConfig& base, const std::string& axis,
                     const std::vector<std::string>& values,
                     bool write_outputs = true);

// Git blob id (SHA-1 of "blob <len>\0" + text).
std::string GitBlobHash(const std::string& text);

}  // namespace privlearn

#endif  // PRIVLEARN_RUNNER_H_
