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

#include "privlearn/graph.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <queue>
#include <sstream>
#include <unordered_set>

#include "privlearn/error.h"
#include "privlearn/rng.h"

namespace privlearn {

namespace {

constexpr std::uint64_t kErdosRenyiTag = 0x4552;
constexpr std::uint64_t kRegularTag = 0x5252;

std::uint64_t EdgeKey(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

// Returns the number of nodes reached from node 0 and whether a proper
// 2-coloring of that component exists.
struct BfsResult {
  std::size_t reached = 0;
  bool two_colorable = true;
};

BfsResult Bfs(const std::vector<std::size_t>& offsets,
              const std::vector<NodeId>& targets) {
  const std::size_t n = offsets.size() - 1;
  BfsResult result;
  if (n == 0) return result;
  std::vector<int> color(n, -1);
  std::queue<NodeId> frontier;
  color[0] = 0;
  frontier.push(0);
  while (!frontier.empty()) {
    NodeId u = frontier.front();
    frontier.pop();
    ++result.reached;
    for (std::size_t k = offsets[u]; k < offsets[u + 1]; ++k) {
      NodeId v = targets[k];
      if (color[v] < 0) {
        color[v] = 1 - color[u];
        frontier.push(v);
      } else if (color[v] == color[u]) {
        result.two_colorable = false;
      }
    }
  }
  return result;
}

bool IsRetryable(const Error& e) {
  return e.code() == ErrorCode::kDisconnectedGraph ||
         e.code() == ErrorCode::kBipartiteGraph;
}

// One pass of the pairing model. Returns false if the leftover stubs cannot be
// matched without a self-loop or multi-edge.
bool TryPairing(std::size_t n, std::size_t d, RngStream& rng,
                std::vector<Edge>& edges) {
  std::vector<NodeId> stubs;
  stubs.reserve(n * d);
  for (NodeId i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) stubs.push_back(i);
  }
  std::unordered_set<std::uint64_t> present;
  present.reserve(n * d);
  edges.clear();

  while (!stubs.empty()) {
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::vector<NodeId> leftover;
    for (std::size_t k = 0; k + 1 < stubs.size(); k += 2) {
      NodeId u = stubs[k];
      NodeId v = stubs[k + 1];
      if (u != v && !present.contains(EdgeKey(u, v))) {
        present.insert(EdgeKey(u, v));
        edges.push_back({std::min(u, v), std::max(u, v)});
      } else {
        leftover.push_back(u);
        leftover.push_back(v);
      }
    }
    if (leftover.empty()) return true;

    std::vector<NodeId> distinct = leftover;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()),
                   distinct.end());
    bool suitable = false;
    for (std::size_t a = 0; a < distinct.size() && !suitable; ++a) {
      for (std::size_t b = a + 1; b < distinct.size(); ++b) {
        if (!present.contains(EdgeKey(distinct[a], distinct[b]))) {
          suitable = true;
          break;
        }
      }
    }
    if (!suitable) return false;
    stubs = std::move(leftover);
  }
  return true;
}

}  // namespace

Graph Graph::Build(std::size_t n, std::span<const Edge> edges) {
  if (n == 0) {
    throw Error(ErrorCode::kInvalidArgument, "graph must have at least 1 node");
  }
  if (n > std::numeric_limits<NodeId>::max()) {
    throw Error(ErrorCode::kInvalidArgument, "too many nodes");
  }
  std::vector<std::size_t> degree(n, 0);
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges.size() * 2);
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) {
      std::ostringstream msg;
      msg << "edge (" << e.u << ", " << e.v << ") references a node outside [0, "
          << n << ")";
      throw Error(ErrorCode::kInvalidNodeId, msg.str());
    }
    if (e.u == e.v) {
      throw Error(ErrorCode::kSelfLoop,
                  "self-loop at node " + std::to_string(e.u));
    }
    if (!seen.insert(EdgeKey(e.u, e.v)).second) {
      std::ostringstream msg;
      msg << "edge (" << e.u << ", " << e.v << ") listed more than once";
      throw Error(ErrorCode::kDuplicateEdge, msg.str());
    }
    ++degree[e.u];
    ++degree[e.v];
  }

  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    g.offsets_[i + 1] = g.offsets_[i] + degree[i];
  }
  g.targets_.resize(g.offsets_[n]);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const Edge& e : edges) {
    g.targets_[fill[e.u]++] = e.v;
    g.targets_[fill[e.v]++] = e.u;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(g.targets_.begin() + g.offsets_[i],
              g.targets_.begin() + g.offsets_[i + 1]);
  }

  BfsResult bfs = Bfs(g.offsets_, g.targets_);
  if (bfs.reached != n) {
    throw Error(ErrorCode::kDisconnectedGraph,
                "only " + std::to_string(bfs.reached) + " of " +
                    std::to_string(n) + " nodes reachable from node 0");
  }
  if (bfs.two_colorable) {
    throw Error(ErrorCode::kBipartiteGraph,
                "graph has no odd cycle; the random walk would be periodic");
  }
  return g;
}

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> out(num_nodes());
  for (NodeId i = 0; i < out.size(); ++i) out[i] = degree(i);
  return out;
}

bool Graph::HasEdge(NodeId u, NodeId v) const {
  if (u >= num_nodes() || v >= num_nodes()) return false;
  auto row = neighbors(u);
  return std::binary_search(row.begin(), row.end(), v);
}

std::vector<Edge> Graph::Edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (NodeId u = 0; u < num_nodes(); ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

Graph GenerateErdosRenyi(std::size_t n, double p, std::uint64_t seed,
                         int max_attempts) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "p must lie in (0, 1]");
  }
  if (n < 3) {
    throw Error(ErrorCode::kInvalidArgument,
                "a non-bipartite graph needs at least 3 nodes");
  }
  std::vector<Edge> edges;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    RngStream rng(DeriveSeed(seed, {kErdosRenyiTag, n,
                                    static_cast<std::uint64_t>(attempt)}));
    edges.clear();
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = u + 1; v < n; ++v) {
        if (rng.Bernoulli(p)) edges.push_back({u, v});
      }
    }
    try {
      return Graph::Build(n, edges);
    } catch (const Error& e) {
      if (!IsRetryable(e)) throw;
    }
  }
  throw Error(ErrorCode::kGenerationFailed,
              "no connected non-bipartite G(" + std::to_string(n) + ", p) in " +
                  std::to_string(max_attempts) + " attempts");
}

Graph GenerateRandomRegular(std::size_t n, std::size_t d, std::uint64_t seed,
                            int max_attempts) {
  if (d < 3 || d >= n || (n * d) % 2 != 0) {
    throw Error(ErrorCode::kInvalidDegree,
                "need 3 <= d < n and n*d even (n=" + std::to_string(n) +
                    ", d=" + std::to_string(d) + ")");
  }
  std::vector<Edge> edges;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    RngStream rng(DeriveSeed(seed, {kRegularTag, n, d,
                                    static_cast<std::uint64_t>(attempt)}));
    if (!TryPairing(n, d, rng, edges)) continue;
    try {
      return Graph::Build(n, edges);
    } catch (const Error& e) {
      if (!IsRetryable(e)) throw;
    }
  }
  throw Error(ErrorCode::kGenerationFailed,
              "no connected non-bipartite " + std::to_string(d) +
                  "-regular graph on " + std::to_string(n) + " nodes in " +
                  std::to_string(max_attempts) + " attempts");
}

Graph ReadEdgeList(std::istream& in) {
  std::vector<Edge> edges;
  std::size_t max_id = 0;
  std::size_t declared_nodes = 0;
  bool any = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      // The writer's header comment carries the node count.
      std::istringstream header(line.substr(hash + 1));
      std::string word;
      std::size_t count = 0;
      if (header >> word && word == "nodes" && header >> count) {
        declared_nodes = count;
      }
      line.erase(hash);
    }
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    long long u = 0;
    long long v = 0;
    std::string extra;
    if (!(fields >> u) || !(fields >> v) || (fields >> extra) || u < 0 ||
        v < 0 || u > std::numeric_limits<NodeId>::max() ||
        v > std::numeric_limits<NodeId>::max()) {
      throw Error(ErrorCode::kIoError, "malformed edge on line " +
                                           std::to_string(line_no) + ": '" +
                                           line + "'");
    }
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
    max_id = std::max<std::size_t>(max_id, std::max(u, v));
    any = true;
  }
  if (!any) throw Error(ErrorCode::kIoError, "edge list contains no edges");
  return Graph::Build(std::max(max_id + 1, declared_nodes), edges);
}

Graph LoadEdgeList(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  return ReadEdgeList(in);
}

void WriteEdgeList(std::ostream& out, const Graph& g) {
  out << "# nodes " << g.num_nodes() << " edges " << g.num_edges() << "\n";
  for (const Edge& e : g.Edges()) out << e.u << " " << e.v << "\n";
}

void SaveEdgeList(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  WriteEdgeList(out, g);
}

}  // namespace privlearn
