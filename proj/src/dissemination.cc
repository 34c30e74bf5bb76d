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

#include <algorithm>
#include <cmath>
#include <limits>

#include "privlearn/error.h"

namespace privlearn {

namespace {

// Index into [self, neighbors...]: 0 means stay, k + 1 means neighbors(i)[k].
std::size_t PickDestination(const TransitionModel& tm, NodeId i,
                            RngStream& rng) {
  double u = rng.NextUniform() - tm.self_prob(i);
  if (u < 0.0) return 0;
  auto probs = tm.neighbor_probs(i);
  for (std::size_t k = 0; k < probs.size(); ++k) {
    u -= probs[k];
    if (u < 0.0) return k + 1;
  }
  // Rounding: fall back to the last neighbor with positive mass.
  for (std::size_t k = probs.size(); k > 0; --k) {
    if (probs[k - 1] > 0.0) return k;
  }
  return 0;
}

}  // namespace

DisseminationParams DisseminationParams::Make(
    double h, double sigma, double g_of_n, std::size_t walk_len,
    std::optional<std::size_t> slot_cap) {
  DisseminationParams p;
  p.h = h;
  p.sigma = sigma;
  p.g_of_n = g_of_n;
  const double product = std::floor(h * g_of_n);
  p.cap = product < 1.0 ? 0 : static_cast<std::size_t>(product);
  p.walk_len = walk_len;
  p.slot_cap = slot_cap;
  p.Validate();
  return p;
}

double DisseminationParams::TheoreticalH(double sigma, double beta) {
  return 16.0 * sigma / (1.0 - beta);
}

void DisseminationParams::Validate() const {
  if (cap < 1) {
    throw Error(ErrorCode::kInvalidArgument, "h * g(N) must be at least 1");
  }
  if (walk_len < 1) {
    throw Error(ErrorCode::kInvalidArgument, "walk length must be at least 1");
  }
  if (walk_len > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorCode::kInvalidArgument, "walk length too large");
  }
}

std::vector<std::string> DisseminationParams::Warnings() const {
  std::vector<std::string> warnings;
  if (sigma < 11.0) {
    warnings.push_back("sigma < 11: below the concentration-bound requirement");
  }
  return warnings;
}

DisseminationState LaunchRound(
    std::span<const std::optional<PerturbedVector>> perturbed,
    const DisseminationParams& params) {
  params.Validate();
  DisseminationState state;
  const std::size_t n = perturbed.size();
  state.mailboxes.resize(n);
  state.cap = params.cap;
  state.walk_len = params.walk_len;
  state.slot_cap = params.slot_cap;
  state.agent_messages.assign(n, 0);
  state.arrivals.resize(n);
  const auto hops = static_cast<std::uint32_t>(params.walk_len);
  for (std::size_t i = 0; i < n; ++i) {
    if (!perturbed[i].has_value()) continue;
    Token token{*perturbed[i], hops};
    state.mailboxes[i].queue.assign(params.cap, token);
    state.tokens_launched += params.cap;
  }
  state.in_flight = state.tokens_launched;
  return state;
}

void StepSlot(DisseminationState& state, const TransitionModel& tm,
              std::span<RngStream> agent_rngs) {
  const std::size_t n = state.mailboxes.size();
  if (tm.num_nodes() != n || agent_rngs.size() != n) {
    throw Error(ErrorCode::kInvalidArgument,
                "transition model, streams and mailboxes disagree on n");
  }
  if (state.edge_counts.size() != tm.num_directed_edges()) {
    state.edge_counts.assign(tm.num_directed_edges(), 0);
  }

  for (NodeId i = 0; i < n; ++i) {
    std::deque<Token>& queue = state.mailboxes[i].queue;
    const std::size_t pops = std::min(state.cap, queue.size());
    auto neighbors = tm.neighbors(i);
    for (std::size_t p = 0; p < pops; ++p) {
      Token token = queue.front();
      queue.pop_front();
      --token.remaining_hops;
      ++state.hops;
      const std::size_t choice = PickDestination(tm, i, agent_rngs[i]);
      NodeId dest = i;
      if (choice > 0) {
        dest = neighbors[choice - 1];
        const std::size_t edge = tm.row_offset(i) + (choice - 1);
        if (state.edge_counts[edge]++ == 0) state.touched_edges.push_back(edge);
        ++state.total_messages;
        ++state.agent_messages[i];
      }
      if (token.remaining_hops == 0) {
        state.mailboxes[dest].sampled.push_back(token.payload);
        ++state.tokens_sampled;
        --state.in_flight;
      } else {
        state.arrivals[dest].push_back(token);
      }
    }
  }

  for (NodeId i = 0; i < n; ++i) {
    std::vector<Token>& incoming = state.arrivals[i];
    if (incoming.empty()) continue;
    std::deque<Token>& queue = state.mailboxes[i].queue;
    queue.insert(queue.end(), incoming.begin(), incoming.end());
    incoming.clear();
  }

  std::uint64_t busiest = 0;
  for (std::size_t edge : state.touched_edges) {
    busiest = std::max<std::uint64_t>(busiest, state.edge_counts[edge]);
    state.edge_counts[edge] = 0;
  }
  state.touched_edges.clear();
  state.max_edge_messages_per_slot =
      std::max(state.max_edge_messages_per_slot, busiest);
  ++state.slot;
}

DisseminationResult RunRound(DisseminationState& state,
                             const TransitionModel& tm,
                             std::span<RngStream> agent_rngs) {
  while (state.in_flight > 0) {
    if (state.slot_cap.has_value() && state.slot >= *state.slot_cap) {
      for (AgentMailbox& box : state.mailboxes) {
        state.tokens_dropped += box.queue.size();
        box.queue.clear();
      }
      state.in_flight = 0;
      state.truncated = true;
      break;
    }
    StepSlot(state, tm, agent_rngs);
  }
  DisseminationResult result;
  result.slots = state.slot;
  result.total_messages = state.total_messages;
  result.max_edge_messages_per_slot = state.max_edge_messages_per_slot;
  result.tokens_launched = state.tokens_launched;
  result.tokens_dropped = state.tokens_dropped;
  result.truncated = state.truncated;
  return result;
}

std::vector<RngStream> DisseminationStreams(std::uint64_t run_seed,
                                            std::size_t round, std::size_t n) {
  std::vector<RngStream> streams;
  streams.reserve(n);
  const std::uint64_t base =
      DeriveSeed(run_seed, StreamKind::kDisseminate, {round});
  for (std::size_t i = 0; i < n; ++i) {
    streams.emplace_back(DeriveSeed(base, {i}));
  }
  return streams;
}

}  // namespace privlearn
