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

#ifndef PRIVLEARN_DISSEMINATION_H_
#define PRIVLEARN_DISSEMINATION_H_

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "privlearn/protocol.h"
#include "privlearn/rng.h"
#include "privlearn/transition.h"

namespace privlearn {

// A perturbed vector in transit. remaining_hops == 0 means the token has been
// sampled and is never forwarded again. No origin id is carried.
struct Token {
  PerturbedVector payload;
  std::uint32_t remaining_hops = 0;
};

struct DisseminationParams {
  double h = 1.0;
  double sigma = 11.0;
  double g_of_n = 1.0;
  // floor(h * g_of_n): walks launched per adopting agent, and the number of
  // tokens each agent may forward per slot.
  std::size_t cap = 1;
  std::size_t walk_len = 1;
  std::optional<std::size_t> slot_cap;

  static DisseminationParams Make(double h, double sigma, double g_of_n,
                                  std::size_t walk_len,
                                  std::optional<std::size_t> slot_cap = {});
  // 16 sigma / (1 - beta).
  static double TheoreticalH(double sigma, double beta);

  void Validate() const;
  std::vector<std::string> Warnings() const;
};

struct AgentMailbox {
  std::deque<Token> queue;
  std::vector<PerturbedVector> sampled;

  std::size_t v_count() const { return sampled.size(); }
};

// Engine state for one round. Slots are synchronous: every agent pops from its
// queue first, and arrivals are appended (in sender-id order) only after the
// whole slot has been processed.
struct DisseminationState {
  std::vector<AgentMailbox> mailboxes;
  std::size_t cap = 1;
  std::size_t walk_len = 1;
  std::optional<std::size_t> slot_cap;

  std::size_t slot = 0;
  std::uint64_t tokens_launched = 0;
  std::uint64_t tokens_sampled = 0;
  std::uint64_t tokens_dropped = 0;
  std::uint64_t in_flight = 0;
  std::uint64_t hops = 0;
  std::uint64_t total_messages = 0;
  std::uint64_t max_edge_messages_per_slot = 0;
  std::vector<std::uint64_t> agent_messages;
  bool truncated = false;

  // Scratch, reused across slots.
  std::vector<std::vector<Token>> arrivals;
  std::vector<std::uint32_t> edge_counts;
  std::vector<std::size_t> touched_edges;
};

struct DisseminationResult {
  std::size_t slots = 0;
  std::uint64_t total_messages = 0;
  std::uint64_t max_edge_messages_per_slot = 0;
  std::uint64_t tokens_launched = 0;
  std::uint64_t tokens_dropped = 0;
  bool truncated = false;
};

// Each agent with a perturbed vector enqueues `cap` copies with
// remaining_hops = walk_len into its own queue.
DisseminationState LaunchRound(
    std::span<const std::optional<PerturbedVector>> perturbed,
    const DisseminationParams& params);

// Advances one slot. `agent_rngs[i]` drives every forwarding choice made by
// agent i, so results do not depend on the order agents are visited.
void StepSlot(DisseminationState& state, const TransitionModel& tm,
              std::span<RngStream> agent_rngs);

// Steps until no token is in flight, or until slot_cap is reached (survivors
// are then dropped and the result is flagged truncated).
DisseminationResult RunRound(DisseminationState& state,
                             const TransitionModel& tm,
                             std::span<RngStream> agent_rngs);

// Per-agent forwarding streams for one round of one run.
std::vector<RngStream> DisseminationStreams(std::uint64_t run_seed,
                                            std::size_t round, std::size_t n);

}  // namespace privlearn

#endif  // PRIVLEARN_DISSEMINATION_H_
