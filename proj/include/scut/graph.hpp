#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "scut/common.hpp"
#include "scut/rational.hpp"

namespace scut {

// Undirected simple connected graph in compressed sparse row form with
// sorted neighbor lists. Immutable after construction, so it is safe to
// share across threads. Node ids are 0..n-1; a side table keeps the ids the
// input file used, for reporting.
class Graph {
 public:
  // Builds from a list of undirected edges over ids 0..n-1 and validates:
  // no self-loops, connected. Duplicate edges are collapsed and flagged.
  static Graph from_edges(NodeId n, std::vector<std::pair<NodeId, NodeId>> edges) {
    if (n == 0) throw ConfigError("graph must have at least one node");
    bool dedup = false;
    for (auto& [u, v] : edges) {
      if (u >= n || v >= n) {
        throw ConfigError("edge endpoint " + std::to_string(std::max(u, v)) +
                          " out of range for n=" + std::to_string(n));
      }
      if (u == v) throw ConfigError("self-loop at node " + std::to_string(u));
      if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    const auto last = std::unique(edges.begin(), edges.end());
    if (last != edges.end()) {
      dedup = true;
      edges.erase(last, edges.end());
    }

    Graph g;
    g.off_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& [u, v] : edges) {
      ++g.off_[u + 1];
      ++g.off_[v + 1];
    }
    for (std::size_t i = 1; i <= n; ++i) g.off_[i] += g.off_[i - 1];
    g.adj_.resize(g.off_[n]);
    std::vector<std::size_t> fill(g.off_.begin(), g.off_.end() - 1);
    for (const auto& [u, v] : edges) {
      g.adj_[fill[u]++] = v;
      g.adj_[fill[v]++] = u;
    }
    // Inputs were sorted by (min,max) endpoint, which does not sort each
    // neighbor list; do that per node so ports are canonical.
    for (NodeId v = 0; v < n; ++v) {
      std::sort(g.adj_.begin() + static_cast<std::ptrdiff_t>(g.off_[v]),
                g.adj_.begin() + static_cast<std::ptrdiff_t>(g.off_[v + 1]));
    }
    g.m_ = edges.size();
    g.had_duplicates_ = dedup;
    g.ext_ids_.resize(n);
    for (NodeId v = 0; v < n; ++v) g.ext_ids_[v] = v;
    g.check_connected();
    return g;
  }

  NodeId n() const { return static_cast<NodeId>(off_.size() - 1); }
  std::uint64_t m() const { return m_; }

  NodeId degree(NodeId v) const {
    return static_cast<NodeId>(off_[v + 1] - off_[v]);
  }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {adj_.data() + off_[v], off_[v + 1] - off_[v]};
  }

  NodeId neighbor(NodeId v, NodeId port) const { return adj_[off_[v] + port]; }

  bool has_edge(NodeId u, NodeId v) const {
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  // Port index on u whose edge leads to v. Neighbor lists are sorted, so
  // this is a binary search.
  NodeId port_to(NodeId u, NodeId v) const {
    const auto nb = neighbors(u);
    const auto it = std::lower_bound(nb.begin(), nb.end(), v);
    if (it == nb.end() || *it != v) {
      throw ConfigError("no edge " + std::to_string(u) + "-" + std::to_string(v));
    }
    return static_cast<NodeId>(it - nb.begin());
  }

  // For each (node, port): the port index of the reverse direction, i.e.
  // rev[off(v)+p] is the port on neighbor(v,p) that leads back to v. Indexed
  // like adj_. The simulator uses this to tag deliveries with the receiving
  // port.
  std::vector<NodeId> reverse_ports() const {
    std::vector<NodeId> rev(adj_.size());
    for (NodeId v = 0; v < n(); ++v) {
      for (NodeId p = 0; p < degree(v); ++p) {
        rev[off_[v] + p] = port_to(neighbor(v, p), v);
      }
    }
    return rev;
  }

  // True if construction collapsed duplicate input edges.
  bool had_duplicates() const { return had_duplicates_; }

  // The node ids the input used, per internal id (identity for generated
  // graphs).
  const std::vector<std::uint64_t>& external_ids() const { return ext_ids_; }

 private:
  friend Graph load_edge_list(const std::string&);
  Graph() = default;

  void check_connected() const {
    std::vector<char> seen(n(), 0);
    std::vector<NodeId> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      for (const NodeId u : neighbors(v)) {
        if (!seen[u]) {
          seen[u] = 1;
          ++reached;
          stack.push_back(u);
        }
      }
    }
    if (reached != n()) throw ConfigError("graph is disconnected");
  }

  std::vector<NodeId> adj_;
  std::vector<std::size_t> off_;
  std::vector<std::uint64_t> ext_ids_;
  std::uint64_t m_ = 0;
  bool had_duplicates_ = false;
};

// Parses the edge-list text format: one edge per line as two whitespace-
// separated decimal ids, '#' starts a comment line, blank lines are skipped.
// Ids are compacted to 0..n-1 in order of first appearance; the original
// ids are kept in the external-id table.
inline Graph load_edge_list(const std::string& text) {
  std::unordered_map<std::uint64_t, NodeId> compact;
  std::vector<std::uint64_t> ext_ids;
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  const auto intern = [&](std::uint64_t id) {
    const auto [it, fresh] = compact.emplace(id, static_cast<NodeId>(ext_ids.size()));
    if (fresh) ext_ids.push_back(id);
    return it->second;
  };
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::uint64_t u = 0, v = 0;
    std::string extra;
    if (!(fields >> u >> v) || (fields >> extra)) {
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected \"u v\", got \"" + line + "\"");
    }
    if (u == v) {
      throw ParseError("line " + std::to_string(lineno) + ": self-loop at " +
                       std::to_string(u));
    }
    // Sequenced explicitly: ids must compact in order of first appearance,
    // and argument evaluation order would be unspecified.
    const NodeId cu = intern(u);
    const NodeId cv = intern(v);
    edges.emplace_back(cu, cv);
  }
  if (ext_ids.empty()) throw ParseError("empty edge list");
  Graph g = Graph::from_edges(static_cast<NodeId>(ext_ids.size()), std::move(edges));
  g.ext_ids_ = std::move(ext_ids);
  return g;
}

// Writes the same format load_edge_list reads: one "u v" line per edge with
// u < v, in ascending order, using internal ids.
inline std::string serialize_edge_list(const Graph& g) {
  std::string out;
  for (NodeId v = 0; v < g.n(); ++v) {
    for (const NodeId u : g.neighbors(v)) {
      if (v < u) {
        out += std::to_string(v);
        out += ' ';
        out += std::to_string(u);
        out += '\n';
      }
    }
  }
  return out;
}

// A proper nonempty node subset with its cached crossing-edge count and
// volume. Members are kept sorted.
struct Cut {
  std::vector<NodeId> members;
  std::uint64_t crossing = 0;
  std::uint64_t vol_s = 0;

  // Builds the cut and derives crossing/vol_s by scanning member adjacency.
  static Cut of(const Graph& g, std::vector<NodeId> members) {
    std::sort(members.begin(), members.end());
    if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
      throw ConfigError("cut members contain a duplicate node");
    }
    if (members.empty() || members.size() >= g.n()) {
      throw ConfigError("cut must be a proper nonempty subset");
    }
    if (members.back() >= g.n()) {
      throw ConfigError("cut member " + std::to_string(members.back()) +
                        " out of range");
    }
    std::vector<char> in_s(g.n(), 0);
    for (const NodeId v : members) in_s[v] = 1;
    Cut c;
    for (const NodeId v : members) {
      c.vol_s += g.degree(v);
      for (const NodeId u : g.neighbors(v)) {
        if (!in_s[u]) ++c.crossing;
      }
    }
    c.members = std::move(members);
    return c;
  }

  bool contains(NodeId v) const {
    return std::binary_search(members.begin(), members.end(), v);
  }

  // The complement side, also sorted.
  std::vector<NodeId> complement(const Graph& g) const {
    std::vector<NodeId> out;
    out.reserve(g.n() - members.size());
    std::size_t k = 0;
    for (NodeId v = 0; v < g.n(); ++v) {
      if (k < members.size() && members[k] == v) {
        ++k;
      } else {
        out.push_back(v);
      }
    }
    return out;
  }
};

// phi(S) = |E(S,S-bar)| / min(vol(S), 2m - vol(S)), exact.
inline Rat conductance_exact(const Graph& g, const Cut& c) {
  const std::uint64_t denom = std::min(c.vol_s, 2 * g.m() - c.vol_s);
  if (denom == 0) throw ConfigError("cut side has zero volume");
  return Rat(BigInt(c.crossing), BigInt(denom));
}

inline double conductance(const Graph& g, const Cut& c) {
  const std::uint64_t denom = std::min(c.vol_s, 2 * g.m() - c.vol_s);
  if (denom == 0) throw ConfigError("cut side has zero volume");
  return static_cast<double>(c.crossing) / static_cast<double>(denom);
}

// min(|S|, n-|S|) / n.
inline double balance(const Graph& g, const Cut& c) {
  const std::uint64_t small =
      std::min<std::uint64_t>(c.members.size(), g.n() - c.members.size());
  return static_cast<double>(small) / static_cast<double>(g.n());
}

// BFS hop distances from src; the graph is connected so all entries are
// finite.
inline std::vector<NodeId> bfs_distances(const Graph& g, NodeId src) {
  constexpr NodeId kUnset = std::numeric_limits<NodeId>::max();
  std::vector<NodeId> dist(g.n(), kUnset);
  std::vector<NodeId> frontier{src};
  dist[src] = 0;
  while (!frontier.empty()) {
    std::vector<NodeId> next;
    for (const NodeId v : frontier) {
      for (const NodeId u : g.neighbors(v)) {
        if (dist[u] == kUnset) {
          dist[u] = dist[v] + 1;
          next.push_back(u);
        }
      }
    }
    frontier = std::move(next);
  }
  return dist;
}

// Exact diameter by BFS from every node.
inline NodeId diameter(const Graph& g) {
  NodeId best = 0;
  for (NodeId s = 0; s < g.n(); ++s) {
    for (const NodeId d : bfs_distances(g, s)) best = std::max(best, d);
  }
  return best;
}

}  // namespace scut
