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

#ifndef PRIVLEARN_TRANSITION_H_
#define PRIVLEARN_TRANSITION_H_

#include <cstddef>
#include <span>
#include <vector>

#include "privlearn/graph.h"

namespace privlearn {

// Metropolis-Hastings forwarding distribution over a Graph: a token at i moves
// to neighbor k with probability min(1/deg(i), 1/deg(k)) and stays at i with
// the remaining mass. The resulting matrix is symmetric and doubly stochastic.
//
// Neighbor probabilities are aligned with Graph::neighbors(i). `gap` and
// `walk_length` are zero until filled in by SpectralGap / WalkLength.
class TransitionModel {
 public:
  std::size_t num_nodes() const { return self_prob_.size(); }

  double self_prob(NodeId i) const { return self_prob_[i]; }
  std::span<const double> neighbor_probs(NodeId i) const {
    return {neighbor_probs_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  std::span<const NodeId> neighbors(NodeId i) const {
    return {targets_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  std::size_t row_offset(NodeId i) const { return offsets_[i]; }
  std::size_t num_directed_edges() const { return targets_.size(); }

  // Psi(i, j); zero for non-adjacent distinct nodes.
  double Prob(NodeId i, NodeId j) const;

  // y = x * Psi (equivalently Psi * x, since Psi is symmetric).
  void Apply(std::span<const double> x, std::span<double> y) const;

  double gap = 0.0;
  std::size_t walk_length = 0;
  double alpha = 0.0;

 private:
  friend TransitionModel MhTransition(const Graph& g);

  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
  std::vector<double> self_prob_;
  std::vector<double> neighbor_probs_;
};

TransitionModel MhTransition(const Graph& g);

struct SpectralOptions {
  double tol = 1e-9;
  std::size_t max_iterations = 1'000'000;
  std::size_t dense_threshold = 4096;
};

// 1 - (second largest eigenvalue modulus of Psi), by power iteration on Psi^2
// deflated against the uniform vector. Throws kConvergenceFailure past the
// iteration cap and kInvalidArgument when n exceeds the dense threshold.
double SpectralGap(const TransitionModel& tm, const SpectralOptions& options = {});

// ceil((1/gap) * ln(2n/alpha)), clamped below at 1.
std::size_t WalkLength(std::size_t n, double gap, double alpha);

// Default uniformity tolerance 1/n^3.
double DefaultAlpha(std::size_t n);

// Fallback for graphs too large for SpectralGap: c_walk * ceil(log2 n).
std::size_t FallbackWalkLength(std::size_t n, double c_walk);

}  // namespace privlearn

#endif  // PRIVLEARN_TRANSITION_H_
