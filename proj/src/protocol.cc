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

#include "privlearn/protocol.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "privlearn/environment.h"
#include "privlearn/error.h"

namespace privlearn {

namespace {

void CheckOptionCount(std::size_t m) {
  if (m == 0 || m > OptionSet::kMaxOptions) {
    throw Error(ErrorCode::kInvalidArgument,
                "option count must lie in [1, " +
                    std::to_string(OptionSet::kMaxOptions) + "]");
  }
}

}  // namespace

AdoptionVector AdoptionVector::Adopt(std::size_t m, std::size_t option) {
  CheckOptionCount(m);
  if (option >= m) {
    throw Error(ErrorCode::kInvalidArgument, "option index out of range");
  }
  return AdoptionVector(m, option);
}

PerturbedVector::PerturbedVector(std::size_t m, std::uint64_t mask)
    : m_(static_cast<std::uint32_t>(m)), mask_(mask) {
  CheckOptionCount(m);
  if (m < 64 && (mask >> m) != 0) {
    throw Error(ErrorCode::kInvalidArgument, "mask has bits beyond m");
  }
}

double ProtocolParams::delta() const {
  if (beta >= 1.0) return std::numeric_limits<double>::infinity();
  return std::log(beta / (1.0 - beta));
}

bool ProtocolParams::perturbs() const { return std::isfinite(epsilon); }

double ProtocolParams::flip_probability() const {
  if (!perturbs()) return 0.0;
  return 1.0 / (std::exp(epsilon / 2.0) + 1.0);
}

void ProtocolParams::Validate() const {
  if (!(epsilon > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must be positive");
  }
  if (!(beta > 0.5 && beta <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "beta must lie in (1/2, 1]");
  }
  if (!(mu >= 0.0 && mu <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "mu must lie in [0, 1]");
  }
}

std::vector<std::string> ProtocolParams::Warnings() const {
  std::vector<std::string> warnings;
  const double d = delta();
  if (std::isfinite(d) && 6.0 * mu > d * d) {
    warnings.push_back("6*mu > delta^2: exploration exceeds the regret-bound condition");
  }
  const double e = std::exp(1.0);
  if (beta >= e / (e + 1.0)) {
    warnings.push_back("beta >= e/(e+1): outside the regret-bound regime");
  }
  return warnings;
}

std::optional<PerturbedVector> Perturb(const AdoptionVector& x,
                                       const ProtocolParams& params,
                                       RngStream& rng) {
  if (!x.adopted_any()) return std::nullopt;
  const double flip = params.flip_probability();
  std::uint64_t mask = x.mask();
  if (flip > 0.0) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (rng.Bernoulli(flip)) mask ^= std::uint64_t{1} << j;
    }
  }
  return PerturbedVector(x.size(), mask);
}

PopularityEstimate EstimatePopularityFromCounts(
    std::span<const std::size_t> ones, std::size_t sample_count,
    const ProtocolParams& params) {
  if (sample_count == 0) {
    throw Error(ErrorCode::kEmptySampleSet,
                "no perturbed vectors were sampled; use the uniform fallback");
  }
  const std::size_t m = ones.size();
  PopularityEstimate est;
  est.sample_count = sample_count;
  est.lambda.resize(m);
  est.q_tilde.resize(m);
  const double v = static_cast<double>(sample_count);
  double scale = 1.0;
  double offset = 0.0;
  if (params.perturbs()) {
    const double e = std::exp(params.epsilon / 2.0);
    scale = (e + 1.0) / (e - 1.0);
    offset = 1.0 / (e - 1.0);
  }
  for (std::size_t j = 0; j < m; ++j) {
    est.lambda[j] = static_cast<double>(ones[j]) / v;
    est.q_tilde[j] = std::max(scale * est.lambda[j] - offset, 0.0);
  }
  return est;
}

PopularityEstimate EstimatePopularity(std::span<const PerturbedVector> samples,
                                      const ProtocolParams& params) {
  if (samples.empty()) {
    throw Error(ErrorCode::kEmptySampleSet,
                "no perturbed vectors were sampled; use the uniform fallback");
  }
  const std::size_t m = samples.front().size();
  std::vector<std::size_t> ones(m, 0);
  for (const PerturbedVector& s : samples) {
    if (s.size() != m) {
      throw Error(ErrorCode::kInvalidArgument, "samples disagree on m");
    }
    for (std::size_t j = 0; j < m; ++j) ones[j] += s.bit(j);
  }
  return EstimatePopularityFromCounts(ones, samples.size(), params);
}

PopularityEstimate Normalize(PopularityEstimate est) {
  const std::size_t m = est.q_tilde.size();
  est.q_hat.assign(m, 0.0);
  if (m == 0) return est;
  const double total = std::accumulate(est.q_tilde.begin(), est.q_tilde.end(), 0.0);
  if (total > 0.0) {
    for (std::size_t j = 0; j < m; ++j) est.q_hat[j] = est.q_tilde[j] / total;
  } else {
    std::fill(est.q_hat.begin(), est.q_hat.end(), 1.0 / static_cast<double>(m));
  }
  return est;
}

std::size_t SampleOption(const std::optional<PopularityEstimate>& est,
                         std::size_t m, const ProtocolParams& params,
                         RngStream& rng) {
  CheckOptionCount(m);
  if (rng.Bernoulli(params.mu) || !est.has_value()) {
    return rng.UniformIndex(m);
  }
  const std::vector<double>& q = est->q_hat;
  if (q.size() != m) {
    throw Error(ErrorCode::kInvalidArgument,
                "estimate has not been normalized for m options");
  }
  const double u = rng.NextUniform();
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t j = 0; j < m; ++j) {
    if (q[j] <= 0.0) continue;
    cumulative += q[j];
    last_positive = j;
    if (u < cumulative) return j;
  }
  // Rounding left u above the final cumulative sum.
  return last_positive;
}

AdoptionVector AdoptDecision(std::size_t j_star,
                             std::span<const std::uint8_t> phi,
                             const ProtocolParams& params, RngStream& rng) {
  if (j_star >= phi.size()) {
    throw Error(ErrorCode::kInvalidArgument, "j_star out of range");
  }
  const double p = phi[j_star] ? params.beta : 1.0 - params.beta;
  if (rng.Bernoulli(p)) return AdoptionVector::Adopt(phi.size(), j_star);
  return AdoptionVector::None(phi.size());
}

AdoptionVector InitialAdoption(std::size_t agent, std::size_t m) {
  return AdoptionVector::Adopt(m, agent % m);
}

}  // namespace privlearn
