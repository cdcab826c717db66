#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "scut/common.hpp"
#include "scut/graph.hpp"
#include "scut/pagerank.hpp"
#include "scut/rational.hpp"
#include "scut/walk.hpp"

namespace scut {

// Sweep partitioning: order nodes by rho(i) = p~(i)/d(i) descending and
// evaluate the conductance of every prefix cut S_j (the first j nodes of
// the order) in one linear pass over the edges.

struct SweepOrder {
  std::vector<NodeId> pi;         // position -> node, largest rho first
  std::vector<std::size_t> pos;   // node -> position (inverse of pi)
  std::vector<double> rho;        // per node, for reporting
};

// Exact ordering from integer weights (p~(i) = weights[i]/total for any
// common total, which cancels in the comparison): rho descending, ties by
// ascending node id. Integer cross-multiplication keeps the order free of
// floating-point artifacts, so every replica computes the same permutation.
inline SweepOrder order_by_rho(const Graph& g, std::span<const std::uint64_t> weights) {
  if (weights.size() != g.n()) throw ConfigError("weight vector size mismatch");
  SweepOrder o;
  o.pi.resize(g.n());
  std::iota(o.pi.begin(), o.pi.end(), NodeId{0});
  std::sort(o.pi.begin(), o.pi.end(), [&](NodeId a, NodeId b) {
    const int c = compare_ratio(weights[a], g.degree(a), weights[b], g.degree(b));
    if (c != 0) return c > 0;
    return a < b;
  });
  o.pos.resize(g.n());
  o.rho.resize(g.n());
  for (std::size_t k = 0; k < o.pi.size(); ++k) o.pos[o.pi[k]] = k;
  for (NodeId v = 0; v < g.n(); ++v) {
    o.rho[v] = static_cast<double>(weights[v]) / static_cast<double>(g.degree(v));
  }
  return o;
}

// Double-precision overload for externally supplied probability vectors
// (e.g. ground-truth distributions injected by tests). Same tie rule.
inline SweepOrder order_by_rho(const Graph& g, std::span<const double> values) {
  if (values.size() != g.n()) throw ConfigError("value vector size mismatch");
  SweepOrder o;
  o.pi.resize(g.n());
  o.rho.resize(g.n());
  for (NodeId v = 0; v < g.n(); ++v) {
    o.rho[v] = values[v] / static_cast<double>(g.degree(v));
  }
  std::iota(o.pi.begin(), o.pi.end(), NodeId{0});
  std::sort(o.pi.begin(), o.pi.end(), [&](NodeId a, NodeId b) {
    if (o.rho[a] != o.rho[b]) return o.rho[a] > o.rho[b];
    return a < b;
  });
  o.pos.resize(g.n());
  for (std::size_t k = 0; k < o.pi.size(); ++k) o.pos[o.pi[k]] = k;
  return o;
}

inline SweepOrder order_by_rho(const Graph& g, const ProbEstimate& est) {
  SweepOrder o = order_by_rho(g, std::span<const std::uint64_t>(est.weights));
  for (NodeId v = 0; v < g.n(); ++v) {
    o.rho[v] = est.values[v] / static_cast<double>(g.degree(v));
  }
  return o;
}

inline SweepOrder order_by_rho(const Graph& g, const PageRankEstimate& est) {
  SweepOrder o = order_by_rho(g, std::span<const std::uint64_t>(est.visits));
  for (NodeId v = 0; v < g.n(); ++v) {
    o.rho[v] = est.values[v] / static_cast<double>(g.degree(v));
  }
  return o;
}

// Prefix-cut table. Entry k (0-based) describes S_{k+1}, the first k+1
// nodes of the order; prefix sizes j run 1..n-1.
struct SweepResult {
  std::vector<std::uint64_t> crossings;   // |E(S_j, S_j-bar)|
  std::vector<std::uint64_t> volumes;     // vol(S_j)
  std::vector<double> conductances;       // phi(S_j)
  std::vector<NodeId> l_counts;           // L_j: earlier-neighbor count of pi[j-1]
  std::vector<NodeId> r_counts;           // R_j = degree - L_j
  std::uint64_t two_m = 0;
  std::size_t best_j = 0;                 // 1-based prefix size of the argmin
  double best_conductance = 0.0;
  std::uint64_t best_crossing = 0;        // exact ratio behind best_conductance
  std::uint64_t best_denominator = 1;

  Rat conductance_exact(std::size_t j) const {
    const std::uint64_t den = std::min(volumes[j - 1], two_m - volumes[j - 1]);
    return Rat(BigInt(crossings[j - 1]), BigInt(den));
  }
  Rat best_exact() const {
    return Rat(BigInt(best_crossing), BigInt(best_denominator));
  }
};

// One pass over the order using the recurrences
//   crossings[j] = crossings[j-1] - L_j + R_j
//   volumes[j]   = volumes[j-1] + L_j + R_j  (= volumes[j-1] + degree)
// where L_j / R_j count the j-th node's neighbors inside / outside the
// preceding prefix. The argmin is selected by exact integer comparison,
// ties to the smallest j.
inline SweepResult sweep_conductances(const Graph& g, const SweepOrder& order) {
  const NodeId n = g.n();
  if (order.pi.size() != n || n < 2) {
    throw ConfigError("sweep needs a full ordering of at least two nodes");
  }
  SweepResult r;
  r.two_m = 2 * g.m();
  r.crossings.resize(n - 1);
  r.volumes.resize(n - 1);
  r.conductances.resize(n - 1);
  r.l_counts.resize(n - 1);
  r.r_counts.resize(n - 1);
  std::uint64_t crossing = 0;
  std::uint64_t volume = 0;
  r.best_denominator = 0;  // 0 = nothing selected yet
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const NodeId u = order.pi[k];
    NodeId l = 0;
    for (const NodeId w : g.neighbors(u)) {
      if (order.pos[w] < k) ++l;
    }
    const NodeId deg = g.degree(u);
    crossing += deg - 2ull * l;  // -L_j + R_j with R_j = deg - L_j
    volume += deg;
    const std::uint64_t den = std::min(volume, r.two_m - volume);
    r.l_counts[k] = l;
    r.r_counts[k] = deg - l;
    r.crossings[k] = crossing;
    r.volumes[k] = volume;
    r.conductances[k] = static_cast<double>(crossing) / static_cast<double>(den);
    if (r.best_denominator == 0 ||
        compare_ratio(crossing, den, r.best_crossing, r.best_denominator) < 0) {
      r.best_crossing = crossing;
      r.best_denominator = den;
      r.best_j = k + 1;
      r.best_conductance = r.conductances[k];
    }
  }
  return r;
}

// Materializes the winning prefix as a Cut.
inline Cut prefix_cut(const Graph& g, const SweepOrder& order, std::size_t j) {
  if (j == 0 || j >= g.n()) throw ConfigError("prefix size out of range");
  return Cut::of(g, {order.pi.begin(), order.pi.begin() + static_cast<std::ptrdiff_t>(j)});
}

}  // namespace scut
