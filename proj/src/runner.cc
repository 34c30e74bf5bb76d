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

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "privlearn/dissemination.h"
#include "privlearn/environment.h"
#include "privlearn/error.h"
#include "privlearn/protocol.h"
#include "privlearn/rng.h"

namespace privlearn {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

Graph BuildGraph(const ExperimentConfig& cfg, std::uint64_t seed) {
  const std::uint64_t graph_seed = DeriveSeed(seed, StreamKind::kGraph);
  switch (cfg.graph.kind) {
    case GraphKind::kErdosRenyi:
      return GenerateErdosRenyi(cfg.n, cfg.graph.p, graph_seed);
    case GraphKind::kRandomRegular:
      return GenerateRandomRegular(cfg.n, cfg.graph.degree, graph_seed);
    case GraphKind::kEdgeList: {
      Graph g = LoadEdgeList(cfg.graph.path);
      if (g.num_nodes() != cfg.n) {
        throw Error(ErrorCode::kConfigError,
                    "edge list has " + std::to_string(g.num_nodes()) +
                        " nodes but config n = " + std::to_string(cfg.n));
      }
      return g;
    }
  }
  throw Error(ErrorCode::kConfigError, "unknown graph generator");
}

json JsonReal(double v) {
  if (std::isinf(v)) return v > 0 ? "infinity" : "-infinity";
  if (std::isnan(v)) return nullptr;
  return v;
}

void WriteFile(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
}

json ManifestJson(const ExperimentConfig& cfg, const ExperimentResult& result,
                  bool complete) {
  json m;
  m["config"] = json::parse(ConfigToJson(cfg));
  m["config_hash"] = result.config_hash;
  m["complete"] = complete;
  m["rounds"] = cfg.rounds;
  m["seeds"] = cfg.seeds;
  m["g"] = cfg.GValue();
  m["g_choice"] = GChoiceName(cfg.g_choice);
  m["h"] = JsonReal(cfg.HValue());
  m["theoretical_h"] = JsonReal(cfg.TheoreticalH());
  m["walks_per_agent"] = cfg.WalksPerAgent();
  m["delta"] = JsonReal(cfg.protocol.delta());
  m["conditions"] = {{"sigma_ge_11", result.conditions.sigma_ok},
                     {"six_mu_le_delta_sq", result.conditions.exploration_ok},
                     {"ln_n_lt_g_lt_n", result.conditions.g_range_ok},
                     {"theoretical_h", result.conditions.theoretical_h}};
  m["outside_theoretical_constants"] = !result.conditions.all_ok();
  m["warnings"] = result.conditions.warnings;
  const double loss = static_cast<double>(cfg.rounds) * cfg.protocol.epsilon;
  m["total_privacy_loss"] = cfg.rounds == 0 ? json(0.0) : JsonReal(loss);
  json runs = json::array();
  for (const SeedSummary& s : result.seeds) {
    runs.push_back({{"seed", s.seed},
                    {"spectral_gap", s.spectral_gap},
                    {"gap_exact", s.gap_exact},
                    {"walk_length", s.walk_length},
                    {"final_running_regret", s.final_running_regret},
                    {"truncated_rounds", s.truncated_rounds}});
  }
  m["runs"] = runs;
  return m;
}

}  // namespace

std::string GitBlobHash(const std::string& text) {
  const std::string header = "blob " + std::to_string(text.size());
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr) throw Error(ErrorCode::kIoError, "EVP_MD_CTX_new failed");
  const char zero = '\0';
  const bool ok = EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr) == 1 &&
                  EVP_DigestUpdate(ctx, header.data(), header.size()) == 1 &&
                  EVP_DigestUpdate(ctx, &zero, 1) == 1 &&
                  EVP_DigestUpdate(ctx, text.data(), text.size()) == 1 &&
                  EVP_DigestFinal_ex(ctx, digest, &len) == 1;
  EVP_MD_CTX_free(ctx);
  if (!ok) throw Error(ErrorCode::kIoError, "SHA-1 digest failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof(buf), "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

RunSetup PrepareRun(const ExperimentConfig& cfg, std::uint64_t seed) {
  Graph graph = BuildGraph(cfg, seed);
  TransitionModel tm = MhTransition(graph);
  tm.alpha = cfg.Alpha();
  RunSetup setup{std::move(graph), std::move(tm)};
  const std::size_t n = setup.graph.num_nodes();
  if (cfg.gap_estimate.has_value()) {
    setup.gap = *cfg.gap_estimate;
    setup.walk_length = WalkLength(n, setup.gap, setup.transition.alpha);
  } else if (n <= cfg.dense_threshold) {
    SpectralOptions opts;
    opts.dense_threshold = cfg.dense_threshold;
    setup.gap = SpectralGap(setup.transition, opts);
    setup.gap_exact = true;
    setup.walk_length = WalkLength(n, setup.gap, setup.transition.alpha);
  } else {
    setup.walk_length = FallbackWalkLength(n, cfg.c_walk);
  }
  setup.transition.gap = setup.gap;
  setup.transition.walk_length = setup.walk_length;
  setup.walks_per_agent = cfg.WalksPerAgent();
  return setup;
}

RunTrace RunSingle(const ExperimentConfig& cfg, std::uint64_t seed) {
  return RunSingle(cfg, seed, PrepareRun(cfg, seed));
}

RunTrace RunSingle(const ExperimentConfig& cfg, std::uint64_t seed,
                   const RunSetup& setup) {
  const OptionSet options(cfg.etas);
  const ProtocolParams& params = cfg.protocol;
  params.Validate();
  const std::size_t n = setup.graph.num_nodes();
  const std::size_t m = options.size();
  const DisseminationParams dparams = DisseminationParams::Make(
      cfg.HValue(), cfg.sigma, cfg.GValue(), setup.walk_length, cfg.slot_cap);

  RunTrace trace(m, options.best_eta(), params.epsilon);

  std::vector<AdoptionVector> adoptions;
  adoptions.reserve(n);
  for (std::size_t i = 0; i < n; ++i) adoptions.push_back(InitialAdoption(i, m));
  Popularity previous = ComputePopularity(adoptions, m);

  std::vector<std::optional<PerturbedVector>> perturbed(n);
  for (std::size_t r = 1; r <= cfg.rounds; ++r) {
    const QualityDraw phi = DrawQualities(options, r, seed);

    // Stage 1: perturb last round's adoption.
    for (std::size_t i = 0; i < n; ++i) {
      RngStream rng(DeriveSeed(seed, StreamKind::kPerturb, {r, i}));
      perturbed[i] = Perturb(adoptions[i], params, rng);
    }

    // Stage 2: disseminate over Metropolis-Hastings walks.
    DisseminationState state = LaunchRound(perturbed, dparams);
    std::vector<RngStream> walk_rngs = DisseminationStreams(seed, r, n);
    const DisseminationResult dissemination =
        RunRound(state, setup.transition, walk_rngs);

    // Stages 3 and 4: estimate, sample a candidate, decide adoption.
    RoundMetrics metrics;
    metrics.round = r;
    metrics.s.assign(m, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const std::vector<PerturbedVector>& sampled = state.mailboxes[i].sampled;
      std::optional<PopularityEstimate> estimate;
      if (!sampled.empty()) {
        estimate = Normalize(EstimatePopularity(sampled, params));
      }
      RngStream sample_rng(DeriveSeed(seed, StreamKind::kSample, {r, i}));
      const std::size_t j_star = SampleOption(estimate, m, params, sample_rng);
      ++metrics.s[j_star];

      RngStream adopt_rng(DeriveSeed(seed, StreamKind::kAdopt, {r, i}));
      if (cfg.per_agent_quality) {
        const QualityDraw own = DrawAgentQualities(options, r, i, seed);
        adoptions[i] = AdoptDecision(j_star, own.phi, params, adopt_rng);
      } else {
        adoptions[i] = AdoptDecision(j_star, phi.phi, params, adopt_rng);
      }
    }

    Popularity current = ComputePopularity(adoptions, m);
    metrics.q = current.q;
    metrics.d = current.d;
    metrics.d_total = current.d_total;
    metrics.empty = current.empty;
    metrics.slots = dissemination.slots;
    metrics.messages = dissemination.total_messages;
    metrics.max_edge_messages_per_slot = dissemination.max_edge_messages_per_slot;
    metrics.tokens_dropped = dissemination.tokens_dropped;
    metrics.truncated = dissemination.truncated;
    trace.RegretUpdate(std::move(metrics), previous.q, phi.phi);
    previous = std::move(current);
  }
  return trace;
}

ExperimentResult RunExperiment(const ExperimentConfig& cfg, bool write_outputs) {
  ExperimentResult result;
  result.conditions = CheckConditions(cfg);
  result.config_hash = GitBlobHash(ConfigToJson(cfg));

  fs::path out_dir(cfg.output_dir);
  if (write_outputs) {
    fs::create_directories(out_dir);
    result.manifest_path = (out_dir / "manifest.json").string();
    WriteFile(result.manifest_path, ManifestJson(cfg, result, false).dump(2) + "\n");
  }

  for (std::uint64_t seed : cfg.seeds) {
    const RunSetup setup = PrepareRun(cfg, seed);
    RunTrace trace = RunSingle(cfg, seed, setup);
    SeedSummary summary;
    summary.seed = seed;
    summary.spectral_gap = setup.gap;
    summary.gap_exact = setup.gap_exact;
    summary.walk_length = setup.walk_length;
    summary.final_running_regret = trace.RunningRegret();
    for (const RoundMetrics& r : trace.rounds()) summary.truncated_rounds += r.truncated;
    if (write_outputs) {
      std::ostringstream csv;
      WriteTraceCsv(csv, trace);
      WriteFile(out_dir / ("trace_seed" + std::to_string(seed) + ".csv"), csv.str());
    }
    result.seeds.push_back(summary);
    result.traces.push_back(std::move(trace));
  }

  if (write_outputs) {
    std::ostringstream csv;
    WriteAggregateCsv(csv, result.traces);
    WriteFile(out_dir / "aggregate.csv", csv.str());
    WriteFile(result.manifest_path, ManifestJson(cfg, result, true).dump(2) + "\n");
  }
  return result;
}

ExperimentConfig ApplySweepValue(const ExperimentConfig& base,
                                 const std::string& axis,
                                 const std::string& value) {
  ExperimentConfig cfg = base;
  try {
    if (axis == "n") {
      cfg.n = std::stoul(value);
    } else if (axis == "g_choice" || axis == "g") {
      if (value == "log2") {
        cfg.g_choice = GChoice::kLogSquared;
      } else if (value == "sqrt") {
        cfg.g_choice = GChoice::kSqrt;
      } else {
        cfg.g_choice = GChoice::kExplicit;
        cfg.g_value = std::stod(value);
      }
    } else if (axis == "m") {
      const std::size_t m = std::stoul(value);
      const double best = base.etas.front();
      const double worst = base.etas.size() > 1 ? base.etas.back() : 0.5;
      const OptionSet options = OptionSet::LinearlySpaced(m, best, worst);
      cfg.etas.assign(options.etas().begin(), options.etas().end());
    } else if (axis == "epsilon") {
      cfg.protocol.epsilon = ParseEpsilon(value);
    } else {
      throw Error(ErrorCode::kConfigError,
                  "sweep axis must be one of n, g_choice, m, epsilon");
    }
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::kConfigError,
                "bad value '" + value + "' for sweep axis " + axis);
  }
  cfg.protocol.Validate();
  cfg.output_dir = (fs::path(base.output_dir) / (axis + "=" + value)).string();
  return cfg;
}

SweepResult RunSweep(const ExperimentConfig& base, const std::string& axis,
                     const std::vector<std::string>& values,
                     bool write_outputs) {
  SweepResult sweep;
  std::ostringstream csv;
  csv << "value,round,mean_running_regret,std_running_regret\n";
  for (const std::string& value : values) {
    const ExperimentConfig cfg = ApplySweepValue(base, axis, value);
    ExperimentResult result = RunExperiment(cfg, write_outputs);
    for (const AggregateRow& row : AggregateRunningRegret(result.traces)) {
      char buf[96];
      std::snprintf(buf, sizeof(buf), ",%zu,%.12g,%.12g\n", row.round, row.mean,
                    row.stddev);
      csv << value << buf;
    }
    sweep.values.push_back(value);
    sweep.results.push_back(std::move(result));
  }
  if (write_outputs) {
    fs::create_directories(base.output_dir);
    sweep.comparison_path =
        (fs::path(base.output_dir) / ("sweep_" + axis + ".csv")).string();
    WriteFile(sweep.comparison_path, csv.str());
  }
  return sweep;
}

}  // namespace privlearn
