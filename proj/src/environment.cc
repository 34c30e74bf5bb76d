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

#include "privlearn/environment.h"

#include <algorithm>

#include "privlearn/error.h"
#include "privlearn/rng.h"

namespace privlearn {

namespace {

QualityDraw Draw(const OptionSet& options, std::size_t round, RngStream rng) {
  if (round < 1) {
    throw Error(ErrorCode::kInvalidArgument, "rounds are numbered from 1");
  }
  QualityDraw draw;
  draw.round = round;
  draw.phi.resize(options.size());
  for (std::size_t j = 0; j < options.size(); ++j) {
    draw.phi[j] = rng.Bernoulli(options.eta(j)) ? 1 : 0;
  }
  return draw;
}

}  // namespace

OptionSet::OptionSet(std::vector<double> etas) : etas_(std::move(etas)) {
  if (etas_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "need at least one option");
  }
  if (etas_.size() > kMaxOptions) {
    throw Error(ErrorCode::kInvalidArgument,
                "at most " + std::to_string(kMaxOptions) + " options supported");
  }
  for (double eta : etas_) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "eta values must lie in [0, 1]");
    }
  }
}

OptionSet OptionSet::LinearlySpaced(std::size_t m, double best, double worst) {
  if (m == 0) throw Error(ErrorCode::kInvalidArgument, "m must be positive");
  std::vector<double> etas(m, best);
  for (std::size_t j = 1; j < m; ++j) {
    etas[j] = best + (worst - best) * static_cast<double>(j) /
                         static_cast<double>(m - 1);
  }
  return OptionSet(std::move(etas));
}

double OptionSet::best_eta() const {
  return *std::max_element(etas_.begin(), etas_.end());
}

std::vector<std::string> OptionSet::Warnings() const {
  std::vector<std::string> warnings;
  if (etas_.size() > 1 && !(etas_[0] > etas_[1])) {
    warnings.push_back("option 1 is not strictly the best (eta_1 <= eta_2)");
  }
  for (std::size_t j = 2; j < etas_.size(); ++j) {
    if (etas_[j] > etas_[j - 1]) {
      warnings.push_back("etas are not non-increasing after option 1");
      break;
    }
  }
  return warnings;
}

QualityDraw DrawQualities(const OptionSet& options, std::size_t round,
                          std::uint64_t run_seed) {
  return Draw(options, round,
              RngStream(DeriveSeed(run_seed, StreamKind::kQuality, {round})));
}

QualityDraw DrawAgentQualities(const OptionSet& options, std::size_t round,
                               std::size_t agent, std::uint64_t run_seed) {
  return Draw(options, round,
              RngStream(DeriveSeed(run_seed, StreamKind::kAgentQuality,
                                   {round, agent})));
}

}  // namespace privlearn
