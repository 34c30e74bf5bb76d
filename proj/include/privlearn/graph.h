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

#ifndef PRIVLEARN_GRAPH_H_
#define PRIVLEARN_GRAPH_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace privlearn {

using NodeId = std::uint32_t;

struct Edge {
  NodeId u;
  NodeId v;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Undirected, simple, connected, non-bipartite graph on nodes [0, n).
// Adjacency is stored in compressed sparse rows with each neighbor list sorted
// ascending. Instances can only be obtained through Build (or the generators),
// so every Graph in existence satisfies the invariants above.
class Graph {
 public:
  // Validates and builds. Throws Error with kInvalidNodeId, kSelfLoop,
  // kDuplicateEdge, kDisconnectedGraph or kBipartiteGraph. Pairs are
  // unordered: (u, v) and (v, u) name the same edge and count as a duplicate.
  static Graph Build(std::size_t n, std::span<const Edge> edges);

  std::size_t num_nodes() const { return offsets_.size() - 1; }
  std::size_t num_edges() const { return targets_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId i) const {
    return {targets_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  std::size_t degree(NodeId i) const { return offsets_[i + 1] - offsets_[i]; }
  std::vector<std::size_t> degrees() const;

  // Start of node i's row in the flattened adjacency; the directed edge
  // (i -> neighbors(i)[k]) has index row_offset(i) + k.
  std::size_t row_offset(NodeId i) const { return offsets_[i]; }

  bool HasEdge(NodeId u, NodeId v) const;

  // Each undirected edge once, as (min, max), sorted lexicographically.
  std::vector<Edge> Edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  Graph() = default;

  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
};

// G(n, p) conditioned on being connected and non-bipartite. Attempt k uses a
// sub-seed derived from (seed, k); throws kGenerationFailed after
// `max_attempts` rejected samples.
Graph GenerateErdosRenyi(std::size_t n, double p, std::uint64_t seed,
                         int max_attempts = 100);

// Uniform-ish d-regular simple graph from the pairing (configuration) model,
// rejecting stub pairs that would form self-loops or multi-edges. Requires
// n*d even, 3 <= d < n (kInvalidDegree otherwise).
Graph GenerateRandomRegular(std::size_t n, std::size_t d, std::uint64_t seed,
                            int max_attempts = 100);

// Edge-list text format: one "u v" pair per line; '#' starts a comment; blank
// lines are ignored. n is 1 + the largest id seen, or the count from a
// "# nodes N ..." header if that is larger (the writer emits one).
Graph ReadEdgeList(std::istream& in);
Graph LoadEdgeList(const std::string& path);
void WriteEdgeList(std::ostream& out, const Graph& g);
void SaveEdgeList(const std::string& path, const Graph& g);

}  // namespace privlearn

#endif  // PRIVLEARN_GRAPH_H_
