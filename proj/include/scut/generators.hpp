#pragma once

#include <string>
#include <utility>
#include <vector>

#include "scut/common.hpp"
#include "scut/graph.hpp"
#include "scut/rng.hpp"

namespace scut {

// Test-family generators. Every family is deterministic for fixed parameters
// (including the seed, for the random family).
enum class GraphFamily { barbell, cycle, complete, random_connected };

struct GraphFamilyParams {
  GraphFamily family = GraphFamily::cycle;
  NodeId n = 0;
  double p = 0.0;          // extra-edge probability, random_connected only
  std::uint64_t seed = 0;  // random_connected only
};

inline GraphFamily family_from_string(const std::string& name) {
  if (name == "barbell") return GraphFamily::barbell;
  if (name == "cycle") return GraphFamily::cycle;
  if (name == "complete") return GraphFamily::complete;
  if (name == "random" || name == "random-connected") {
    return GraphFamily::random_connected;
  }
  throw ConfigError("unknown graph family \"" + name + "\"");
}

inline std::string family_name(GraphFamily f) {
  switch (f) {
    case GraphFamily::barbell: return "barbell";
    case GraphFamily::cycle: return "cycle";
    case GraphFamily::complete: return "complete";
    case GraphFamily::random_connected: return "random-connected";
  }
  throw ConfigError("bad family enum");
}

// Two (n-1)/2-cliques joined by a path of length 2 through a middle node.
// With k = (n-1)/2: clique {0..k-1}, middle k, clique {k+1..n-1}, and the
// bridges are (k-1, k) and (k, k+1) -- highest-id node of the first clique
// to the middle to the lowest-id node of the second clique. The sparsest
// cut separates one clique.
inline Graph make_barbell(NodeId n) {
  if (n < 7 || n % 2 == 0) {
    throw ConfigError("barbell requires odd n >= 7, got n=" + std::to_string(n));
  }
  const NodeId k = (n - 1) / 2;
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId u = 0; u < k; ++u) {
    for (NodeId v = u + 1; v < k; ++v) edges.emplace_back(u, v);
  }
  for (NodeId u = k + 1; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  edges.emplace_back(k - 1, k);
  edges.emplace_back(k, k + 1);
  return Graph::from_edges(n, std::move(edges));
}

inline Graph make_cycle(NodeId n) {
  if (n < 3) throw ConfigError("cycle requires n >= 3, got n=" + std::to_string(n));
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  return Graph::from_edges(n, std::move(edges));
}

inline Graph make_complete(NodeId n) {
  if (n < 2) throw ConfigError("complete requires n >= 2, got n=" + std::to_string(n));
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return Graph::from_edges(n, std::move(edges));
}

// Connected by construction: a random recursive tree (node v attaches to a
// uniform earlier node), then every non-tree pair becomes an edge with
// probability p. Deterministic for fixed (n, p, seed).
inline Graph make_random_connected(NodeId n, double p, std::uint64_t seed) {
  if (n < 2) {
    throw ConfigError("random-connected requires n >= 2, got n=" + std::to_string(n));
  }
  if (p < 0.0 || p > 1.0) throw ConfigError("edge probability must be in [0,1]");
  CounterRng rng(seed, rng_salt::kGenerator, n);
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<char> tree_edge(static_cast<std::size_t>(n) * n, 0);
  for (NodeId v = 1; v < n; ++v) {
    const NodeId u = static_cast<NodeId>(rng.below(v));
    edges.emplace_back(u, v);
    tree_edge[static_cast<std::size_t>(u) * n + v] = 1;
  }
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (!tree_edge[static_cast<std::size_t>(u) * n + v] && rng.next_double() < p) {
        edges.emplace_back(u, v);
      }
    }
  }
  return Graph::from_edges(n, std::move(edges));
}

inline Graph generate(const GraphFamilyParams& params) {
  switch (params.family) {
    case GraphFamily::barbell: return make_barbell(params.n);
    case GraphFamily::cycle: return make_cycle(params.n);
    case GraphFamily::complete: return make_complete(params.n);
    case GraphFamily::random_connected:
      return make_random_connected(params.n, params.p, params.seed);
  }
  throw ConfigError("bad family enum");
}

}  // namespace scut
