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

#include "privlearn/dissemination.h"

#include <gtest/gtest.h>

#include <cmath>
#include <optional>
#include <vector>

#include "privlearn/error.h"
#include "privlearn/graph.h"
#include "privlearn/oracle.h"
#include "privlearn/transition.h"

namespace privlearn {
namespace {

std::vector<std::optional<PerturbedVector>> Launchers(
    std::size_t n, const std::vector<NodeId>& adopters, std::size_t m = 2) {
  std::vector<std::optional<PerturbedVector>> out(n);
  for (NodeId i : adopters) out[i] = PerturbedVector(m, 1u << (i % m));
  return out;
}

DisseminationParams ParamsWithCap(std::size_t cap, std::size_t walk_len) {
  return DisseminationParams::Make(1.0, 15.0, static_cast<double>(cap), walk_len);
}

// Triangle 0-1-2 with pendant path 2-3-4; node 4 keeps half its mass.
Graph PathWithTriangle() {
  return Graph::Build(5, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}});
}

std::size_t TotalSampled(const DisseminationState& s) {
  std::size_t total = 0;
  for (const AgentMailbox& mb : s.mailboxes) total += mb.v_count();
  return total;
}

TEST(DisseminationParamsTest, CapIsFloorOfProduct) {
  EXPECT_EQ(DisseminationParams::Make(2.5, 15, 3.3, 4).cap, 8u);
  EXPECT_NEAR(DisseminationParams::TheoreticalH(15, 0.505), 16 * 15 / 0.495, 1e-9);
  EXPECT_THROW(DisseminationParams::Make(0.1, 15, 3.0, 4), Error);
  EXPECT_THROW(DisseminationParams::Make(1.0, 15, 3.0, 0), Error);
  EXPECT_FALSE(DisseminationParams::Make(1.0, 10, 3.0, 4).Warnings().empty());
  EXPECT_TRUE(DisseminationParams::Make(1.0, 11, 3.0, 4).Warnings().empty());
}

TEST(LaunchTest, Counts) {
  const auto p = ParamsWithCap(100, 3);
  const DisseminationState empty = LaunchRound(Launchers(10, {}), p);
  EXPECT_EQ(empty.tokens_launched, 0u);
  const DisseminationState four = LaunchRound(Launchers(10, {0, 3, 5, 9}), p);
  EXPECT_EQ(four.tokens_launched, 400u);
  EXPECT_EQ(four.mailboxes[3].queue.size(), 100u);
  EXPECT_EQ(four.mailboxes[3].queue.front().remaining_hops, 3u);
  EXPECT_TRUE(four.mailboxes[1].queue.empty());
  const DisseminationState all =
      LaunchRound(Launchers(10, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}), p);
  EXPECT_EQ(all.tokens_launched, 1000u);
}

TEST(RunRoundTest, ZeroTokensIsNoOp) {
  const Graph g = GenerateErdosRenyi(20, 0.3, 1);
  const TransitionModel tm = MhTransition(g);
  DisseminationState s = LaunchRound(Launchers(20, {}), ParamsWithCap(5, 4));
  auto rngs = DisseminationStreams(1, 1, 20);
  const DisseminationResult r = RunRound(s, tm, rngs);
  EXPECT_EQ(r.slots, 0u);
  EXPECT_EQ(r.total_messages, 0u);
  EXPECT_EQ(TotalSampled(s), 0u);
}

TEST(RunRoundTest, SingleTokenTakesExactlyWalkLengthSlots) {
  const Graph g = GenerateErdosRenyi(20, 0.3, 1);
  const TransitionModel tm = MhTransition(g);
  DisseminationState s = LaunchRound(Launchers(20, {7}), ParamsWithCap(1, 5));
  auto rngs = DisseminationStreams(1, 1, 20);
  const DisseminationResult r = RunRound(s, tm, rngs);
  EXPECT_EQ(r.slots, 5u);
  EXPECT_EQ(s.hops, 5u);
  EXPECT_EQ(TotalSampled(s), 1u);
}

TEST(StepSlotTest, OneStepWalkFollowsPsi) {
  const Graph g = PathWithTriangle();
  const TransitionModel tm = MhTransition(g);
  // From node 3 (degree 2): to 2 w.p. 1/3, to 4 w.p. 1/2, stays w.p. 1/6.
  std::vector<double> counts(5, 0.0);
  constexpr int kTrials = 60000;
  for (int t = 0; t < kTrials; ++t) {
    DisseminationState s = LaunchRound(Launchers(5, {3}), ParamsWithCap(1, 1));
    auto rngs = DisseminationStreams(t, 1, 5);
    StepSlot(s, tm, rngs);
    ASSERT_EQ(TotalSampled(s), 1u);
    for (std::size_t i = 0; i < 5; ++i) counts[i] += s.mailboxes[i].v_count();
  }
  EXPECT_EQ(counts[0] + counts[1], 0.0);
  // Binomial sd <= sqrt(0.25 / 6e4) ~ 0.002.
  EXPECT_NEAR(counts[2] / kTrials, 1.0 / 3.0, 0.008);
  EXPECT_NEAR(counts[3] / kTrials, 1.0 / 6.0, 0.008);
  EXPECT_NEAR(counts[4] / kTrials, 1.0 / 2.0, 0.008);
}

TEST(StepSlotTest, CapLimitsPopsAndKeepsOrder) {
  const Graph g = GenerateErdosRenyi(10, 0.5, 2);
  const TransitionModel tm = MhTransition(g);
  DisseminationState s = LaunchRound(Launchers(10, {0}), ParamsWithCap(5, 3));
  // Tag the five queued tokens so order is observable.
  for (std::size_t k = 0; k < 5; ++k) {
    s.mailboxes[0].queue[k].payload = PerturbedVector(8, k);
  }
  s.cap = 2;
  auto rngs = DisseminationStreams(3, 1, 10);
  StepSlot(s, tm, rngs);
  // Two popped tokens went somewhere (possibly back to 0, appended at the end).
  std::size_t in_flight = 0;
  for (const AgentMailbox& mb : s.mailboxes) in_flight += mb.queue.size();
  EXPECT_EQ(in_flight, 5u);
  ASSERT_GE(s.mailboxes[0].queue.size(), 3u);
  EXPECT_EQ(s.mailboxes[0].queue[0].payload.mask(), 2u);
  EXPECT_EQ(s.mailboxes[0].queue[1].payload.mask(), 3u);
  EXPECT_EQ(s.mailboxes[0].queue[2].payload.mask(), 4u);
  EXPECT_EQ(s.mailboxes[0].queue[0].remaining_hops, 3u);
  for (std::size_t k = 3; k < s.mailboxes[0].queue.size(); ++k) {
    EXPECT_EQ(s.mailboxes[0].queue[k].remaining_hops, 2u);
  }
  EXPECT_EQ(s.slot, 1u);
}

TEST(StepSlotTest, SelfForwardIsAHopNotAMessage) {
  const Graph g = PathWithTriangle();
  const TransitionModel tm = MhTransition(g);
  // 2000 one-hop tokens from node 4: about half stay.
  DisseminationState s = LaunchRound(Launchers(5, {4}), ParamsWithCap(2000, 1));
  auto rngs = DisseminationStreams(4, 1, 5);
  RunRound(s, tm, rngs);
  EXPECT_EQ(s.hops, 2000u);
  EXPECT_EQ(s.total_messages, s.mailboxes[3].v_count());
  EXPECT_EQ(s.total_messages + s.mailboxes[4].v_count(), 2000u);
  EXPECT_GT(s.mailboxes[4].v_count(), 900u);
  EXPECT_LT(s.mailboxes[4].v_count(), 1100u);
  EXPECT_EQ(s.agent_messages[4], s.total_messages);
  EXPECT_EQ(s.max_edge_messages_per_slot, s.total_messages);
}

TEST(RunRoundTest, ConservationAndHopCount) {
  const Graph g = GenerateRandomRegular(64, 5, 3);
  const TransitionModel tm = MhTransition(g);
  std::vector<NodeId> adopters;
  for (NodeId i = 0; i < 64; i += 2) adopters.push_back(i);
  DisseminationState s = LaunchRound(Launchers(64, adopters), ParamsWithCap(7, 9));
  auto rngs = DisseminationStreams(5, 2, 64);
  const DisseminationResult r = RunRound(s, tm, rngs);
  EXPECT_EQ(r.tokens_launched, 32u * 7u);
  EXPECT_EQ(TotalSampled(s), 32u * 7u);
  EXPECT_EQ(s.tokens_sampled, 32u * 7u);
  EXPECT_EQ(s.hops, 32u * 7u * 9u);
  EXPECT_EQ(s.in_flight, 0u);
  EXPECT_FALSE(r.truncated);
  EXPECT_GE(r.slots, 9u);
  std::uint64_t per_agent = 0;
  for (std::uint64_t c : s.agent_messages) per_agent += c;
  EXPECT_EQ(per_agent, r.total_messages);
  EXPECT_LE(r.max_edge_messages_per_slot, 7u);
}

TEST(RunRoundTest, SlotCapTruncates) {
  const Graph g = GenerateRandomRegular(32, 4, 3);
  const TransitionModel tm = MhTransition(g);
  auto p = ParamsWithCap(4, 20);
  p.slot_cap = 5;
  DisseminationState s = LaunchRound(Launchers(32, {0, 1, 2}), p);
  auto rngs = DisseminationStreams(6, 1, 32);
  const DisseminationResult r = RunRound(s, tm, rngs);
  EXPECT_TRUE(r.truncated);
  EXPECT_EQ(r.slots, 5u);
  EXPECT_EQ(r.tokens_dropped, 12u);
  EXPECT_EQ(TotalSampled(s) + r.tokens_dropped, r.tokens_launched);
}

TEST(RunRoundTest, Deterministic) {
  const Graph g = GenerateErdosRenyi(50, 0.15, 8);
  const TransitionModel tm = MhTransition(g);
  auto run = [&] {
    DisseminationState s =
        LaunchRound(Launchers(50, {1, 4, 9, 16, 25, 36, 49}, 3), ParamsWithCap(6, 8));
    auto rngs = DisseminationStreams(99, 3, 50);
    const DisseminationResult r = RunRound(s, tm, rngs);
    std::vector<std::vector<std::uint64_t>> sampled;
    for (const AgentMailbox& mb : s.mailboxes) {
      sampled.emplace_back();
      for (const PerturbedVector& v : mb.sampled) sampled.back().push_back(v.mask());
    }
    return std::make_tuple(sampled, r.slots, r.total_messages,
                           r.max_edge_messages_per_slot);
  };
  EXPECT_EQ(run(), run());
}

TEST(RunRoundTest, EndpointDistributionMatchesOracle) {
  const Graph g = GenerateErdosRenyi(24, 0.25, 12);
  TransitionModel tm = MhTransition(g);
  const double alpha = DefaultAlpha(24);
  const std::size_t walk_len = WalkLength(24, SpectralGap(tm), alpha);
  constexpr std::size_t kTokens = 100000;
  DisseminationState s =
      LaunchRound(Launchers(24, {5}), ParamsWithCap(kTokens, walk_len));
  auto rngs = DisseminationStreams(7, 1, 24);
  RunRound(s, tm, rngs);
  const std::vector<double> exact = oracle::ExactWalkDistribution(
      oracle::DenseMatrix::MetropolisHastings(g), 5, walk_len);
  double tv = 0.0;
  for (std::size_t i = 0; i < 24; ++i) {
    EXPECT_NEAR(exact[i], 1.0 / 24, alpha);
    tv += std::abs(static_cast<double>(s.mailboxes[i].v_count()) / kTokens - exact[i]);
  }
  EXPECT_LT(tv / 2, 0.01);
}

}  // namespace
}  // namespace privlearn
