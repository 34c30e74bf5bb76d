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

#ifndef PRIVLEARN_ORACLE_H_
#define PRIVLEARN_ORACLE_H_

// Brute-force reference computations. Nothing here calls into the code paths
// it is used to check (power iteration, Stage 1/3 sampling, the runner).

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "privlearn/graph.h"
#include "privlearn/protocol.h"
#include "privlearn/rng.h"
#include "privlearn/transition.h"

namespace privlearn::oracle {

inline constexpr std::size_t kMaxDenseNodes = 200;

class DenseMatrix {
 public:
  explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  // Rebuilds Psi entry by entry from the graph degrees, without consulting the
  // TransitionModel.
  static DenseMatrix MetropolisHastings(const Graph& g);
  static DenseMatrix FromTransition(const TransitionModel& tm);

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * n_ + j];
  }

 private:
  std::size_t n_;
  std::vector<double> data_;
};

// e_origin * Psi^t by t dense vector-matrix products. n <= kMaxDenseNodes.
std::vector<double> ExactWalkDistribution(const DenseMatrix& psi, NodeId origin,
                                          std::size_t t);

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted
// descending. Throws kConvergenceFailure if off-diagonal mass does not drop
// below tol within max_sweeps.
std::vector<double> ExactEigenvalues(const DenseMatrix& psi, double tol = 1e-10,
                                     std::size_t max_sweeps = 100);

// |eigenvalues|, sorted descending.
std::vector<double> ExactSpectralValues(const DenseMatrix& psi,
                                        double tol = 1e-10);

// 1 - second largest eigenvalue modulus.
double ExactSpectralGap(const DenseMatrix& psi);

// E[Lambda] for true popularity q under per-bit randomized response:
// (q (e^{eps/2} - 1) + 1) / (e^{eps/2} + 1).
double DebiasExpectation(double q_true, double epsilon);

// Unclamped inverse of DebiasExpectation.
double DebiasInvert(double lambda, double epsilon);

// One randomized-response bit: kept with probability e^{eps/2}/(e^{eps/2}+1).
bool SampleRandomizedResponseBit(bool bit, double epsilon, RngStream& rng);

// max over one-hot inputs x1, x2 and all 2^m outputs y of P[y|x1] / P[y|x2].
// m <= 4.
double LdpRatioMax(std::size_t m, double epsilon);

// Same, restricted to a given input pair (as masks).
double LdpRatio(std::size_t m, double epsilon, std::uint64_t x1,
                std::uint64_t x2);

// Multiplicative-weights reference dynamics
//   W_j^{r+1} = ((1 - mu) W_j^r + (mu/m) sum_k W_k^r) beta^{Phi} (1-beta)^{1-Phi}
// with W^0 = 1. Returns P^0 .. P^R where P^r = W^r / sum W^r. Weights are
// renormalized every round; if every weight would vanish (beta = 1 with all
// Phi zero) the previous distribution is carried forward.
std::vector<std::vector<double>> MwuReference(
    std::span<const std::vector<std::uint8_t>> phi_history,
    const ProtocolParams& params);

}  // namespace privlearn::oracle

#endif  // PRIVLEARN_ORACLE_H_
