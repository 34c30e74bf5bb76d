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

#include "privlearn/oracle.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>

#include "privlearn/error.h"

namespace privlearn::oracle {

namespace {

void CheckDenseSize(std::size_t n) {
  if (n > kMaxDenseNodes) {
    throw Error(ErrorCode::kInvalidArgument,
                "dense oracle limited to " + std::to_string(kMaxDenseNodes) +
                    " nodes");
  }
}

// log(1 + e^x) without overflow.
double Softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double OffDiagonalNorm(const DenseMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (i != j) s += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(s);
}

}  // namespace

DenseMatrix DenseMatrix::MetropolisHastings(const Graph& g) {
  const std::size_t n = g.num_nodes();
  DenseMatrix psi(n);
  for (NodeId i = 0; i < n; ++i) {
    double off = 0.0;
    for (NodeId k : g.neighbors(i)) {
      const double p = 1.0 / static_cast<double>(std::max(g.degree(i), g.degree(k)));
      psi(i, k) = p;
      off += p;
    }
    psi(i, i) = 1.0 - off;
  }
  return psi;
}

DenseMatrix DenseMatrix::FromTransition(const TransitionModel& tm) {
  const std::size_t n = tm.num_nodes();
  DenseMatrix psi(n);
  for (NodeId i = 0; i < n; ++i) {
    psi(i, i) = tm.self_prob(i);
    auto nbrs = tm.neighbors(i);
    auto probs = tm.neighbor_probs(i);
    for (std::size_t k = 0; k < nbrs.size(); ++k) psi(i, nbrs[k]) = probs[k];
  }
  return psi;
}

std::vector<double> ExactWalkDistribution(const DenseMatrix& psi, NodeId origin,
                                          std::size_t t) {
  const std::size_t n = psi.size();
  CheckDenseSize(n);
  if (origin >= n) throw Error(ErrorCode::kInvalidNodeId, "origin out of range");
  std::vector<double> dist(n, 0.0);
  std::vector<double> next(n);
  dist[origin] = 1.0;
  for (std::size_t step = 0; step < t; ++step) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double w = dist[i];
      if (w == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) next[j] += w * psi(i, j);
    }
    dist.swap(next);
  }
  return dist;
}

std::vector<double> ExactEigenvalues(const DenseMatrix& psi, double tol,
                                     std::size_t max_sweeps) {
  const std::size_t n = psi.size();
  CheckDenseSize(n);
  DenseMatrix a = psi;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (a(i, j) != a(j, i)) {
        throw Error(ErrorCode::kInvalidArgument, "matrix is not symmetric");
      }
    }
  }

  bool converged = OffDiagonalNorm(a) < tol;
  for (std::size_t sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = a(p, k) = c * akp - s * akq;
          a(k, q) = a(q, k) = s * akp + c * akq;
        }
        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = 0.0;
      }
    }
    converged = OffDiagonalNorm(a) < tol;
  }
  if (!converged) {
    throw Error(ErrorCode::kConvergenceFailure,
                "Jacobi sweeps did not converge");
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
  std::sort(eig.begin(), eig.end(), std::greater<>());
  return eig;
}

std::vector<double> ExactSpectralValues(const DenseMatrix& psi, double tol) {
  std::vector<double> eig = ExactEigenvalues(psi, tol);
  for (double& v : eig) v = std::abs(v);
  std::sort(eig.begin(), eig.end(), std::greater<>());
  return eig;
}

double ExactSpectralGap(const DenseMatrix& psi) {
  std::vector<double> moduli = ExactSpectralValues(psi);
  if (moduli.size() < 2) return 1.0;
  return 1.0 - moduli[1];
}

double DebiasExpectation(double q_true, double epsilon) {
  if (std::isinf(epsilon)) return q_true;
  const double e = std::exp(epsilon / 2.0);
  return (q_true * (e - 1.0) + 1.0) / (e + 1.0);
}

double DebiasInvert(double lambda, double epsilon) {
  if (std::isinf(epsilon)) return lambda;
  const double e = std::exp(epsilon / 2.0);
  return (lambda * (e + 1.0) - 1.0) / (e - 1.0);
}

bool SampleRandomizedResponseBit(bool bit, double epsilon, RngStream& rng) {
  if (std::isinf(epsilon)) return bit;
  const double e = std::exp(epsilon / 2.0);
  const bool keep = rng.NextUniform() < e / (e + 1.0);
  return keep ? bit : !bit;
}

double LdpRatio(std::size_t m, double epsilon, std::uint64_t x1,
                std::uint64_t x2) {
  if (m == 0 || m > 4) {
    throw Error(ErrorCode::kInvalidArgument, "exhaustive LDP check needs m <= 4");
  }
  if (x1 == x2) return 1.0;
  if (std::isinf(epsilon)) return std::numeric_limits<double>::infinity();
  const double log_keep = epsilon / 2.0 - Softplus(epsilon / 2.0);
  const double log_flip = -Softplus(epsilon / 2.0);
  double best = 0.0;
  const std::uint64_t outputs = std::uint64_t{1} << m;
  for (std::uint64_t y = 0; y < outputs; ++y) {
    const int d1 = std::popcount(y ^ x1);
    const int d2 = std::popcount(y ^ x2);
    const double log_p1 =
        static_cast<double>(static_cast<int>(m) - d1) * log_keep + d1 * log_flip;
    const double log_p2 =
        static_cast<double>(static_cast<int>(m) - d2) * log_keep + d2 * log_flip;
    best = std::max(best, std::exp(log_p1 - log_p2));
  }
  return best;
}

double LdpRatioMax(std::size_t m, double epsilon) {
  double best = 1.0;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      best = std::max(best, LdpRatio(m, epsilon, std::uint64_t{1} << a,
                                     std::uint64_t{1} << b));
    }
  }
  return best;
}

std::vector<std::vector<double>> MwuReference(
    std::span<const std::vector<std::uint8_t>> phi_history,
    const ProtocolParams& params) {
  if (phi_history.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "need the option count from Phi");
  }
  const std::size_t m = phi_history.front().size();
  const double md = static_cast<double>(m);
  std::vector<double> w(m, 1.0);
  std::vector<std::vector<double>> out;
  out.reserve(phi_history.size() + 1);
  out.emplace_back(m, 1.0 / md);
  for (const std::vector<std::uint8_t>& phi : phi_history) {
    if (phi.size() != m) {
      throw Error(ErrorCode::kInvalidArgument, "Phi rows differ in length");
    }
    double total = 0.0;
    for (double v : w) total += v;
    std::vector<double> next(m);
    double next_total = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double mixed = (1.0 - params.mu) * w[j] + params.mu / md * total;
      next[j] = mixed * (phi[j] ? params.beta : 1.0 - params.beta);
      next_total += next[j];
    }
    if (next_total > 0.0) {
      for (double& v : next) v /= next_total;
      w = std::move(next);
    }
    std::vector<double> p(m);
    double sum = 0.0;
    for (double v : w) sum += v;
    for (std::size_t j = 0; j < m; ++j) p[j] = w[j] / sum;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace privlearn::oracle
