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

#ifndef PRIVLEARN_CONFIG_H_
#define PRIVLEARN_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "privlearn/protocol.h"

namespace privlearn {

enum class GraphKind { kErdosRenyi, kRandomRegular, kEdgeList };

struct GraphSpec {
  GraphKind kind = GraphKind::kRandomRegular;
  double p = 0.1;            // Erdos-Renyi edge probability
  std::size_t degree = 8;    // random regular degree
  std::string path;          // edge-list file

  friend bool operator==(const GraphSpec&, const GraphSpec&) = default;
};

// How g(N) is chosen: ln^2 N ("log2"), sqrt N ("sqrt"), or a fixed number.
enum class GChoice { kLogSquared, kSqrt, kExplicit };

struct ExperimentConfig {
  GraphSpec graph;
  std::size_t n = 256;
  std::vector<double> etas;  // length m
  ProtocolParams protocol;
  double sigma = 15.0;
  std::optional<double> h_override;
  GChoice g_choice = GChoice::kLogSquared;
  double g_value = 0.0;  // used when g_choice == kExplicit
  std::size_t rounds = 100;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::optional<double> alpha;
  std::optional<std::size_t> slot_cap;
  std::optional<double> gap_estimate;
  double c_walk = 4.0;
  std::size_t dense_threshold = 4096;
  bool per_agent_quality = false;
  std::string output_dir = "out";

  std::size_t m() const { return etas.size(); }
  // g(N) for the configured n.
  double GValue() const;
  // h_override if set, else 16 sigma / (1 - beta).
  double HValue() const;
  double TheoreticalH() const;
  // floor(h * g(N)).
  std::size_t WalksPerAgent() const;
  double Alpha() const;

  friend bool operator==(const ExperimentConfig&,
                         const ExperimentConfig&) = default;
};

// Parses the JSON config text. Unknown keys at any level, type mismatches and
// out-of-range values raise kConfigError.
ExperimentConfig ParseConfig(const std::string& json_text);
ExperimentConfig LoadConfig(const std::string& path);

// Canonical JSON (sorted keys, fixed layout); ParseConfig(ToJson(c)) == c.
std::string ConfigToJson(const ExperimentConfig& config);

std::string GChoiceName(GChoice choice);

// Parses "infinity"/"inf" or a number.
double ParseEpsilon(const std::string& text);

struct ConditionReport {
  bool sigma_ok = true;           // sigma >= 11
  bool exploration_ok = true;     // 6 mu <= delta^2
  bool g_range_ok = true;         // ln N < g(N) < N
  bool theoretical_h = true;      // h equals 16 sigma / (1 - beta)
  std::vector<std::string> warnings;

  bool all_ok() const {
    return sigma_ok && exploration_ok && g_range_ok && theoretical_h;
  }
};

// Checks the parameter conditions of the regret bound. Violations are warnings;
// only structurally invalid configs throw.
ConditionReport CheckConditions(const ExperimentConfig& config);

}  // namespace privlearn

#endif  // PRIVLEARN_CONFIG_H_
