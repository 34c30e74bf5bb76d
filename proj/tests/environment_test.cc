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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "privlearn/error.h"

namespace privlearn {
namespace {

TEST(OptionSetTest, Validation) {
  EXPECT_THROW(OptionSet({}), Error);
  EXPECT_THROW(OptionSet({0.5, 1.2}), Error);
  EXPECT_THROW(OptionSet({-0.1}), Error);
  EXPECT_THROW(OptionSet(std::vector<double>(OptionSet::kMaxOptions + 1, 0.5)),
               Error);
  EXPECT_NO_THROW(OptionSet({0.3}));
}

TEST(OptionSetTest, OrderingOnlyWarns) {
  EXPECT_TRUE(OptionSet({0.9, 0.7, 0.5}).Warnings().empty());
  EXPECT_FALSE(OptionSet({0.5, 0.9}).Warnings().empty());
  EXPECT_FALSE(OptionSet({0.9, 0.9}).Warnings().empty());
  EXPECT_DOUBLE_EQ(OptionSet({0.5, 0.9}).best_eta(), 0.9);
}

TEST(OptionSetTest, LinearlySpaced) {
  const OptionSet o = OptionSet::LinearlySpaced(5);
  ASSERT_EQ(o.size(), 5u);
  const std::vector<double> expect = {0.9, 0.8, 0.7, 0.6, 0.5};
  for (std::size_t j = 0; j < 5; ++j) EXPECT_NEAR(o.eta(j), expect[j], 1e-15);
  EXPECT_DOUBLE_EQ(OptionSet::LinearlySpaced(1).eta(0), 0.9);
}

TEST(QualityTest, DegenerateEtas) {
  const OptionSet o({1.0, 0.0});
  for (std::size_t r = 1; r <= 200; ++r) {
    const QualityDraw d = DrawQualities(o, r, 17);
    EXPECT_EQ(d.round, r);
    EXPECT_EQ(d.phi[0], 1);
    EXPECT_EQ(d.phi[1], 0);
  }
}

TEST(QualityTest, FrequencyMatchesEta) {
  const OptionSet o({0.9, 0.3});
  constexpr std::size_t kRounds = 10000;
  double ones0 = 0.0, ones1 = 0.0;
  for (std::size_t r = 1; r <= kRounds; ++r) {
    const QualityDraw d = DrawQualities(o, r, 5);
    ones0 += d.phi[0];
    ones1 += d.phi[1];
  }
  EXPECT_NEAR(ones0 / kRounds, 0.9, 3 * std::sqrt(0.9 * 0.1 / kRounds));
  EXPECT_NEAR(ones1 / kRounds, 0.3, 3 * std::sqrt(0.3 * 0.7 / kRounds));
}

TEST(QualityTest, ReplayIsOrderIndependent) {
  const OptionSet o = OptionSet::LinearlySpaced(6);
  std::vector<QualityDraw> forward;
  for (std::size_t r = 1; r <= 50; ++r) forward.push_back(DrawQualities(o, r, 3));
  for (std::size_t r = 50; r >= 1; --r) {
    EXPECT_EQ(DrawQualities(o, r, 3).phi, forward[r - 1].phi);
  }
  EXPECT_THROW(DrawQualities(o, 0, 3), Error);
}

TEST(QualityTest, AgentDrawsDifferAcrossAgents) {
  const OptionSet o({0.5, 0.5, 0.5, 0.5});
  std::size_t differing = 0;
  for (std::size_t i = 1; i < 50; ++i) {
    differing += DrawAgentQualities(o, 4, i, 9).phi != DrawAgentQualities(o, 4, 0, 9).phi;
  }
  // Each comparison differs with probability 15/16.
  EXPECT_GT(differing, 35u);
  EXPECT_EQ(DrawAgentQualities(o, 4, 7, 9).phi, DrawAgentQualities(o, 4, 7, 9).phi);
}

}  // namespace
}  // namespace privlearn
