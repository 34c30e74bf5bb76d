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

#ifndef PRIVLEARN_ENVIRONMENT_H_
#define PRIVLEARN_ENVIRONMENT_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace privlearn {

// The M options and their Bernoulli quality parameters.
class OptionSet {
 public:
  // Throws kInvalidArgument if etas is empty, longer than kMaxOptions, or has
  // an entry outside [0, 1].
  explicit OptionSet(std::vector<double> etas);

  // Linearly spaced from `best` down to `worst`.
  static OptionSet LinearlySpaced(std::size_t m, double best = 0.9,
                                  double worst = 0.5);

  std::size_t size() const { return etas_.size(); }
  double eta(std::size_t j) const { return etas_[j]; }
  std::span<const double> etas() const { return etas_; }
  double best_eta() const;

  // Non-fatal: the first option is expected to be strictly best and the rest
  // non-increasing. The protocol never relies on this.
  std::vector<std::string> Warnings() const;

  static constexpr std::size_t kMaxOptions = 64;

 private:
  std::vector<double> etas_;
};

struct QualityDraw {
  std::size_t round = 0;
  std::vector<std::uint8_t> phi;
};

// Phi_j^r ~ Bernoulli(eta_j), shared by all agents in round r. The stream is
// derived from (run_seed, round), so replaying a round index reproduces the
// same draw regardless of call order.
QualityDraw DrawQualities(const OptionSet& options, std::size_t round,
                          std::uint64_t run_seed);

// Per-agent variant: an independent draw for (round, agent).
QualityDraw DrawAgentQualities(const OptionSet& options, std::size_t round,
                               std::size_t agent, std::uint64_t run_seed);

}  // namespace privlearn

#endif  // PRIVLEARN_ENVIRONMENT_H_
