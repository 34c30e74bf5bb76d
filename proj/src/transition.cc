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

#include "privlearn/transition.h"

#include <algorithm>
#include <cmath>

#include "privlearn/error.h"
#include "privlearn/rng.h"

namespace privlearn {

namespace {

void RemoveMean(std::span<double> v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  for (double& x : v) x -= mean;
}

double Norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

TransitionModel MhTransition(const Graph& g) {
  const std::size_t n = g.num_nodes();
  TransitionModel tm;
  tm.offsets_.resize(n + 1);
  tm.targets_.reserve(2 * g.num_edges());
  tm.neighbor_probs_.reserve(2 * g.num_edges());
  tm.self_prob_.resize(n);
  for (NodeId i = 0; i < n; ++i) {
    tm.offsets_[i] = g.row_offset(i);
    const double inv_deg_i = 1.0 / static_cast<double>(g.degree(i));
    double moved = 0.0;
    for (NodeId k : g.neighbors(i)) {
      const double inv_deg_k = 1.0 / static_cast<double>(g.degree(k));
      const double p = std::min(inv_deg_i, inv_deg_k);
      tm.targets_.push_back(k);
      tm.neighbor_probs_.push_back(p);
      moved += p;
    }
    tm.self_prob_[i] = std::max(0.0, 1.0 - moved);
  }
  tm.offsets_[n] = tm.targets_.size();
  tm.alpha = DefaultAlpha(n);
  return tm;
}

double TransitionModel::Prob(NodeId i, NodeId j) const {
  if (i == j) return self_prob_[i];
  auto row = neighbors(i);
  auto it = std::lower_bound(row.begin(), row.end(), j);
  if (it == row.end() || *it != j) return 0.0;
  return neighbor_probs_[offsets_[i] + (it - row.begin())];
}

void TransitionModel::Apply(std::span<const double> x,
                            std::span<double> y) const {
  const std::size_t n = num_nodes();
  for (NodeId i = 0; i < n; ++i) {
    double acc = self_prob_[i] * x[i];
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) {
      acc += neighbor_probs_[k] * x[targets_[k]];
    }
    y[i] = acc;
  }
}

double SpectralGap(const TransitionModel& tm, const SpectralOptions& options) {
  const std::size_t n = tm.num_nodes();
  if (n > options.dense_threshold) {
    throw Error(ErrorCode::kInvalidArgument,
                "n = " + std::to_string(n) +
                    " exceeds the spectral threshold; supply a gap estimate");
  }
  if (!(options.tol > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tol must be positive");
  }

  std::vector<double> x(n);
  std::vector<double> y(n);
  std::vector<double> z(n);
  RngStream rng(DeriveSeed(n, StreamKind::kSpectral));
  for (double& v : x) v = rng.NextUniform() - 0.5;
  RemoveMean(x);
  double norm = Norm(x);
  if (norm == 0.0) return 1.0;
  for (double& v : x) v /= norm;

  // Power iteration on Psi^2, whose spectrum is {lambda^2} >= 0, so the
  // dominant non-uniform eigenvalue is the squared second modulus regardless
  // of the sign of lambda_2. Convergence is judged on an Aitken-style
  // extrapolation of the remaining error, not just the last step.
  double estimate = 0.0;
  double prev_delta = 0.0;
  for (std::size_t iter = 1; iter <= options.max_iterations; ++iter) {
    tm.Apply(x, y);
    double next = 0.0;
    for (double v : y) next += v * v;
    tm.Apply(y, z);
    RemoveMean(z);
    norm = Norm(z);
    if (norm == 0.0) return 1.0;  // Psi annihilates every non-uniform vector.
    for (std::size_t i = 0; i < n; ++i) x[i] = z[i] / norm;

    const double delta = next - estimate;
    estimate = next;
    if (iter > 2) {
      const double rho = prev_delta != 0.0 ? delta / prev_delta : 0.0;
      const double remaining =
          (rho > 0.0 && rho < 1.0) ? std::abs(delta) * rho / (1.0 - rho)
                                   : std::abs(delta);
      if (std::abs(delta) < 1e-16 ||
          (std::abs(delta) <= options.tol && remaining <= options.tol)) {
        const double modulus = std::sqrt(std::clamp(estimate, 0.0, 1.0));
        return 1.0 - modulus;
      }
    }
    prev_delta = delta;
  }
  throw Error(ErrorCode::kConvergenceFailure,
              "power iteration did not converge within " +
                  std::to_string(options.max_iterations) + " iterations");
}

std::size_t WalkLength(std::size_t n, double gap, double alpha) {
  if (!(gap > 0.0 && gap <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "gap must lie in (0, 1]");
  }
  if (!(alpha > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "alpha must be positive");
  }
  const double steps =
      std::ceil(std::log(2.0 * static_cast<double>(n) / alpha) / gap);
  return steps < 1.0 ? 1 : static_cast<std::size_t>(steps);
}

double DefaultAlpha(std::size_t n) {
  const double nd = static_cast<double>(n);
  return 1.0 / (nd * nd * nd);
}

std::size_t FallbackWalkLength(std::size_t n, double c_walk) {
  if (!(c_walk > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "c_walk must be positive");
  }
  const double log2n = std::ceil(std::log2(static_cast<double>(std::max<std::size_t>(n, 2))));
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(c_walk * log2n)));
}

}  // namespace privlearn
