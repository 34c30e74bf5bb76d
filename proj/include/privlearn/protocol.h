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

#ifndef PRIVLEARN_PROTOCOL_H_
#define PRIVLEARN_PROTOCOL_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "privlearn/rng.h"

namespace privlearn {

// An agent's adoption in one round: one option or none.
class AdoptionVector {
 public:
  static AdoptionVector None(std::size_t m) { return AdoptionVector(m, kNone); }
  static AdoptionVector Adopt(std::size_t m, std::size_t option);

  std::size_t size() const { return m_; }
  bool adopted_any() const { return option_ != kNone; }
  std::optional<std::size_t> adopted() const {
    if (option_ == kNone) return std::nullopt;
    return option_;
  }
  bool bit(std::size_t j) const { return option_ == j; }
  std::uint64_t mask() const {
    return option_ == kNone ? 0 : (std::uint64_t{1} << option_);
  }

  friend bool operator==(const AdoptionVector&, const AdoptionVector&) = default;

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  AdoptionVector(std::size_t m, std::size_t option) : m_(m), option_(option) {}

  std::size_t m_;
  std::size_t option_;
};

// Randomized-response output: any of the 2^m bit patterns, packed LSB-first.
class PerturbedVector {
 public:
  PerturbedVector() = default;
  PerturbedVector(std::size_t m, std::uint64_t mask);

  std::size_t size() const { return m_; }
  bool bit(std::size_t j) const { return (mask_ >> j) & 1u; }
  std::uint64_t mask() const { return mask_; }

  friend bool operator==(const PerturbedVector&, const PerturbedVector&) = default;

 private:
  std::uint32_t m_ = 0;
  std::uint64_t mask_ = 0;
};

struct ProtocolParams {
  double epsilon = 0.6931471805599453;  // ln 2; +infinity disables perturbation
  double beta = 0.505;
  double mu = 0.01;

  // ln(beta / (1 - beta)); +infinity at beta = 1.
  double delta() const;
  bool perturbs() const;
  // Per-bit flip probability 1 / (e^{eps/2} + 1); 0 when eps is infinite.
  double flip_probability() const;

  // Throws kInvalidArgument for epsilon <= 0, beta outside (1/2, 1] or mu
  // outside [0, 1].
  void Validate() const;
  // Non-fatal theory-condition violations (6 mu <= delta^2, beta < e/(e+1)).
  std::vector<std::string> Warnings() const;

  friend bool operator==(const ProtocolParams&, const ProtocolParams&) = default;
};

struct PopularityEstimate {
  std::vector<double> lambda;
  std::vector<double> q_tilde;
  std::vector<double> q_hat;
  std::size_t sample_count = 0;
};

// Stage 1. Absent for an agent that adopted nothing; otherwise each bit is
// flipped independently with ProtocolParams::flip_probability().
std::optional<PerturbedVector> Perturb(const AdoptionVector& x,
                                       const ProtocolParams& params,
                                       RngStream& rng);

// Stage 3 debiasing. Throws kEmptySampleSet when there are no samples.
PopularityEstimate EstimatePopularity(std::span<const PerturbedVector> samples,
                                      const ProtocolParams& params);

// Same as EstimatePopularity, from per-option counts of set bits.
PopularityEstimate EstimatePopularityFromCounts(
    std::span<const std::size_t> ones, std::size_t sample_count,
    const ProtocolParams& params);

// Fills q_hat = q_tilde / sum(q_tilde), or uniform when every q_tilde is 0.
PopularityEstimate Normalize(PopularityEstimate est);

// With probability mu, uniform; otherwise categorical on est->q_hat. An absent
// estimate (no tokens sampled) also falls back to uniform.
std::size_t SampleOption(const std::optional<PopularityEstimate>& est,
                         std::size_t m, const ProtocolParams& params,
                         RngStream& rng);

// Stage 4. Adopt j_star with probability beta if phi[j_star] is 1, else with
// probability 1 - beta.
AdoptionVector AdoptDecision(std::size_t j_star,
                             std::span<const std::uint8_t> phi,
                             const ProtocolParams& params, RngStream& rng);

// Round-robin initialization: agent i adopts option i mod m.
AdoptionVector InitialAdoption(std::size_t agent, std::size_t m);

}  // namespace privlearn

#endif  // PRIVLEARN_PROTOCOL_H_
