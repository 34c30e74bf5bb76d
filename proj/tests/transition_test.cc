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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "privlearn/error.h"
#include "privlearn/graph.h"
#include "privlearn/oracle.h"

namespace privlearn {
namespace {

Graph Triangle() {
  return Graph::Build(3, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}});
}

Graph CompleteGraph(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) edges.push_back({u, v});
  }
  return Graph::Build(n, edges);
}

// Triangle 0-1-2 with a pendant path 2-3-4.
Graph PathWithTriangle() {
  return Graph::Build(5, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}});
}

TEST(TransitionTest, MinOfInverseDegrees) {
  const TransitionModel tm = MhTransition(PathWithTriangle());
  // deg(3) = 2, deg(2) = 3.
  EXPECT_DOUBLE_EQ(tm.Prob(3, 2), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(tm.Prob(2, 3), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(tm.Prob(3, 4), 1.0 / 2.0);
  EXPECT_DOUBLE_EQ(tm.Prob(0, 1), 1.0 / 2.0);
  EXPECT_DOUBLE_EQ(tm.Prob(0, 3), 0.0);
  // Node 4 has degree 1 and neighbor degree 2.
  EXPECT_DOUBLE_EQ(tm.self_prob(4), 0.5);
  EXPECT_DOUBLE_EQ(tm.Prob(4, 4), 0.5);
}

TEST(TransitionTest, RegularGraphHasNoSelfMass) {
  const Graph g = GenerateRandomRegular(30, 4, 2);
  const TransitionModel tm = MhTransition(g);
  for (NodeId i = 0; i < 30; ++i) {
    EXPECT_EQ(tm.self_prob(i), 0.0);
    for (double p : tm.neighbor_probs(i)) EXPECT_EQ(p, 0.25);
  }
}

TEST(TransitionTest, DoublyStochasticAndSymmetric) {
  const Graph g = GenerateErdosRenyi(60, 0.1, 9);
  const TransitionModel tm = MhTransition(g);
  std::vector<double> col(60, 0.0);
  for (NodeId i = 0; i < 60; ++i) {
    double row = tm.self_prob(i);
    col[i] += tm.self_prob(i);
    const auto nb = tm.neighbors(i);
    const auto pr = tm.neighbor_probs(i);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      row += pr[k];
      col[nb[k]] += pr[k];
      EXPECT_EQ(pr[k], tm.Prob(nb[k], i));
    }
    EXPECT_NEAR(row, 1.0, 1e-12);
  }
  for (double c : col) EXPECT_NEAR(c, 1.0, 1e-12);
}

TEST(TransitionTest, ApplyMatchesDense) {
  const Graph g = GenerateErdosRenyi(25, 0.3, 4);
  const TransitionModel tm = MhTransition(g);
  const oracle::DenseMatrix psi = oracle::DenseMatrix::MetropolisHastings(g);
  std::vector<double> x(25), y(25);
  for (std::size_t i = 0; i < 25; ++i) x[i] = std::sin(static_cast<double>(i));
  tm.Apply(x, y);
  for (std::size_t j = 0; j < 25; ++j) {
    double expect = 0.0;
    for (std::size_t i = 0; i < 25; ++i) expect += x[i] * psi(i, j);
    EXPECT_NEAR(y[j], expect, 1e-14);
  }
}

TEST(SpectralGapTest, CompleteGraphs) {
  EXPECT_NEAR(SpectralGap(MhTransition(Triangle())), 0.5, 1e-9);
  EXPECT_NEAR(SpectralGap(MhTransition(CompleteGraph(4))), 2.0 / 3.0, 1e-9);
}

TEST(SpectralGapTest, AgreesWithJacobiOracle) {
  std::vector<Graph> graphs;
  for (std::uint64_t s = 1; s <= 6; ++s) {
    graphs.push_back(GenerateErdosRenyi(20 + 30 * s, 0.12, s));
    graphs.push_back(GenerateRandomRegular(16 + 30 * s, 3 + (s % 4), s));
  }
  graphs.push_back(PathWithTriangle());
  for (const Graph& g : graphs) {
    const double gap = SpectralGap(MhTransition(g));
    const double exact =
        oracle::ExactSpectralGap(oracle::DenseMatrix::MetropolisHastings(g));
    EXPECT_GT(gap, 0.0);
    EXPECT_LE(gap, 1.0);
    EXPECT_NEAR(gap, exact, 1e-6) << "n=" << g.num_nodes();
  }
}

TEST(SpectralGapTest, RejectsLargeGraphs) {
  const Graph g = GenerateRandomRegular(64, 4, 1);
  SpectralOptions options;
  options.dense_threshold = 32;
  EXPECT_THROW(SpectralGap(MhTransition(g), options), Error);
}

TEST(SpectralGapTest, IterationCapRaisesConvergenceFailure) {
  const Graph g = GenerateErdosRenyi(80, 0.08, 3);
  SpectralOptions options;
  options.max_iterations = 2;
  options.tol = 1e-15;
  try {
    SpectralGap(MhTransition(g), options);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConvergenceFailure);
  }
}

TEST(WalkLengthTest, Examples) {
  // ceil(1.5 * ln 512) = ceil(9.357) = 10.
  EXPECT_EQ(WalkLength(4, 2.0 / 3.0, 1.0 / 64.0), 10u);
  EXPECT_EQ(WalkLength(4, 1.0, 8.0), 1u);
  EXPECT_DOUBLE_EQ(DefaultAlpha(4), 1.0 / 64.0);
  EXPECT_THROW(WalkLength(4, 0.0, 0.1), Error);
  EXPECT_THROW(WalkLength(4, 0.5, 0.0), Error);
}

TEST(WalkLengthTest, DoublingNAddsFourLnTwoOverGap) {
  const double gap = 0.25;
  for (std::size_t n : {64u, 128u, 1000u}) {
    const double l1 = std::log(2.0 * n / DefaultAlpha(n)) / gap;
    const double l2 = std::log(4.0 * n / DefaultAlpha(2 * n)) / gap;
    EXPECT_NEAR(l2 - l1, 4.0 * std::log(2.0) / gap, 1e-9);
    const std::size_t a = WalkLength(n, gap, DefaultAlpha(n));
    const std::size_t b = WalkLength(2 * n, gap, DefaultAlpha(2 * n));
    EXPECT_GE(b, a);
    EXPECT_NEAR(static_cast<double>(b - a), 4.0 * std::log(2.0) / gap, 1.0);
  }
}

TEST(WalkLengthTest, Fallback) {
  EXPECT_EQ(FallbackWalkLength(1024, 4.0), 40u);
  EXPECT_EQ(FallbackWalkLength(1025, 4.0), 44u);
}

}  // namespace
}  // namespace privlearn
