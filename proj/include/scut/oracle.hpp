#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "scut/common.hpp"
#include "scut/graph.hpp"
#include "scut/rational.hpp"

namespace scut {

// Independent ground-truth computations for tests: matrix-power walk
// distributions, series-summed personalized PageRank, and exhaustive
// sparsest-cut search. Nothing here touches the simulator.

struct OracleBudget {
  NodeId max_n_bruteforce = 22;  // subset enumeration cap; hard limit 26
  double ppr_tail_tol = 1e-12;
};

// One step of the lazy-free random walk: out[u] = sum over neighbors v of
// in[v] / d(v).
inline std::vector<double> walk_step(const Graph& g, const std::vector<double>& in) {
  std::vector<double> out(g.n(), 0.0);
  for (NodeId v = 0; v < g.n(); ++v) {
    const double share = in[v] / static_cast<double>(g.degree(v));
    for (const NodeId u : g.neighbors(v)) out[u] += share;
  }
  return out;
}

inline std::vector<Rat> walk_step_rational(const Graph& g, const std::vector<Rat>& in) {
  std::vector<Rat> out(g.n(), Rat(0));
  for (NodeId v = 0; v < g.n(); ++v) {
    const Rat share = in[v] / Rat(BigInt(g.degree(v)));
    for (const NodeId u : g.neighbors(v)) out[u] += share;
  }
  return out;
}

// p_l(s, .): the distribution of an l-step random walk from s, by l exact
// vector-transition multiplications. l = 0 gives the indicator at s.
inline std::vector<double> exact_walk_distribution(const Graph& g, NodeId s,
                                                   std::size_t l) {
  if (s >= g.n()) throw ConfigError("walk source out of range");
  std::vector<double> p(g.n(), 0.0);
  p[s] = 1.0;
  for (std::size_t step = 0; step < l; ++step) p = walk_step(g, p);
  return p;
}

// Same distribution with exact rational entries (sums to exactly 1).
inline std::vector<Rat> exact_walk_distribution_rational(const Graph& g, NodeId s,
                                                         std::size_t l) {
  if (s >= g.n()) throw ConfigError("walk source out of range");
  std::vector<Rat> p(g.n(), Rat(0));
  p[s] = Rat(1);
  for (std::size_t step = 0; step < l; ++step) p = walk_step_rational(g, p);
  return p;
}

// Personalized PageRank by truncated power series:
//   ppr = sum_{t=0..T} alpha (1-alpha)^t p_t(s, .)
// with T chosen so the untruncated tail mass (1-alpha)^(T+1) <= tol. Entries
// are nonnegative and sum to 1 - (1-alpha)^(T+1), i.e. within [1-tol, 1].
inline std::vector<double> exact_ppr(const Graph& g, NodeId s, double alpha,
                                     double tol = 1e-12) {
  if (s >= g.n()) throw ConfigError("ppr source out of range");
  if (!(alpha > 0.0) || alpha > 1.0) {
    throw ConfigError("reset probability must be in (0,1]");
  }
  if (!(tol > 0.0)) throw ConfigError("tail tolerance must be positive");
  std::size_t T = 0;
  if (alpha < 1.0) {
    // Smallest T with (T+1) * ln(1-alpha) <= ln tol.
    const double steps = std::log(tol) / std::log1p(-alpha);
    T = static_cast<std::size_t>(std::ceil(steps - 1.0));
  }
  std::vector<double> ppr(g.n(), 0.0);
  std::vector<double> p(g.n(), 0.0);
  p[s] = 1.0;
  double coeff = alpha;  // alpha (1-alpha)^t
  for (std::size_t t = 0;; ++t) {
    for (NodeId v = 0; v < g.n(); ++v) ppr[v] += coeff * p[v];
    if (t == T) break;
    p = walk_step(g, p);
    coeff *= 1.0 - alpha;
  }
  return ppr;
}

struct BruteForceResult {
  Cut cut;          // minimizer, reported as the side containing node 0
  Rat phi_exact;    // exact conductance of that cut
  double phi = 0.0; // phi_exact as a double, for convenience
};

namespace detail {
// Lexicographic order on subsets-as-sorted-sequences, with a proper prefix
// ordered before its extensions. Masks are over node ids 0..n-1.
inline bool lex_less(std::uint32_t a, std::uint32_t b) {
  while (a != 0 && b != 0) {
    const int ea = __builtin_ctz(a);
    const int eb = __builtin_ctz(b);
    if (ea != eb) return ea < eb;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}
}  // namespace detail

// Exhaustive sparsest cut: enumerates every proper nonempty subset with
// node 0 fixed to one side (2^(n-1) - 1 candidates) and returns the exact
// minimizer of phi. A Gray-code walk flips one node per step, updating
// crossing and volume in O(d(flipped)). Ties break to the lexicographically
// smallest member set, comparing each candidate as the side containing
// node 0.
inline BruteForceResult brute_force_sparsest_cut(const Graph& g,
                                                 const OracleBudget& budget = {}) {
  if (budget.max_n_bruteforce > 26) {
    throw ConfigError("brute-force cap above the supported limit of 26");
  }
  if (g.n() > budget.max_n_bruteforce) {
    throw ConfigError("graph too large for brute force: n=" + std::to_string(g.n()) +
                      " > cap " + std::to_string(budget.max_n_bruteforce));
  }
  if (g.n() < 2) throw ConfigError("no proper cuts exist for n < 2");

  // S is the enumerated side, always excluding node 0; mask bit j means node
  // j+1 is in S. The reported member set is the complement (containing 0).
  const NodeId n = g.n();
  const std::uint64_t two_m = 2 * g.m();
  std::vector<char> in_s(n, 0);
  std::uint64_t crossing = 0;
  std::uint64_t vol = 0;
  std::uint64_t best_cross = 1;
  std::uint64_t best_den = 0;  // best phi = best_cross / best_den; den 0 = +inf
  std::uint32_t best_mask = 0;

  const std::uint64_t total = (1ull << (n - 1)) - 1;
  std::uint32_t mask = 0;
  for (std::uint64_t i = 1; i <= total; ++i) {
    // Reflected Gray code: step i flips bit ctz(i), i.e. node ctz(i) + 1.
    const int bit = __builtin_ctzll(i);
    const NodeId v = static_cast<NodeId>(bit + 1);
    std::uint64_t to_s = 0;  // v's neighbors currently in S
    for (const NodeId u : g.neighbors(v)) to_s += in_s[u];
    if (!in_s[v]) {
      in_s[v] = 1;
      mask |= (1u << bit);
      vol += g.degree(v);
      crossing += g.degree(v) - 2 * to_s;
    } else {
      in_s[v] = 0;
      mask &= ~(1u << bit);
      vol -= g.degree(v);
      // to_s counted v itself? No: in_s[v] was 1 but v is not its own
      // neighbor (no self-loops), so to_s is exactly the in-S neighbors.
      crossing -= g.degree(v) - 2 * to_s;
    }
    const std::uint64_t den = std::min(vol, two_m - vol);
    const int cmp = best_den == 0 ? -1 : compare_ratio(crossing, den, best_cross, best_den);
    if (cmp < 0) {
      best_cross = crossing;
      best_den = den;
      best_mask = mask;
    } else if (cmp == 0) {
      // Equal phi: compare complements (the sides containing node 0). The
      // complement flips every bit of the node-1..n-1 range and always
      // includes node 0, which compares equal on both sides, so compare the
      // flipped masks.
      const std::uint32_t full = static_cast<std::uint32_t>((1ull << (n - 1)) - 1);
      if (detail::lex_less(~mask & full, ~best_mask & full)) best_mask = mask;
    }
  }

  std::vector<NodeId> members{0};
  for (NodeId v = 1; v < n; ++v) {
    if (!(best_mask & (1u << (v - 1)))) members.push_back(v);
  }
  BruteForceResult r{Cut::of(g, std::move(members)),
                     Rat(BigInt(best_cross), BigInt(best_den)), 0.0};
  r.phi = to_double(r.phi_exact);
  return r;
}

}  // namespace scut
