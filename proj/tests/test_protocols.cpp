// Distributed building blocks: rank-wave gather/flood of the weight table,
// the two-round position exchange, the replicated sweep, and value flooding.

#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <numeric>
#include <vector>

#include "scut/generators.hpp"
#include "scut/graph.hpp"
#include "scut/protocols.hpp"
#include "scut/rng.hpp"
#include "scut/sweep.hpp"

using namespace scut;

namespace {

std::vector<std::uint64_t> random_weights(const Graph& g, std::uint64_t seed) {
  CounterRng rng(seed, 0x77, 0);
  std::vector<std::uint64_t> w(g.n());
  for (auto& x : w) x = rng.below(1 << 20);
  return w;
}

// Every protocol here must finish within a linear number of rounds: the
// rank wave is n+2, each pipelined pass is at most n + D, plus small
// constants. 3n + 2D + 12 is the documented envelope.
std::size_t round_envelope(const Graph& g) {
  return 3 * static_cast<std::size_t>(g.n()) + 2 * diameter(g) + 12;
}

}  // namespace

TEST_CASE("weight broadcast delivers the full table everywhere") {
  for (const std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const Graph g = make_random_connected(13, 0.25, seed);
    const auto w = random_weights(g, seed);
    SimConfig sim;
    sim.seed = seed;
    auto [outs, metrics] = rho_broadcast(g, w, sim);
    REQUIRE(outs.size() == g.n());
    for (NodeId v = 0; v < g.n(); ++v) {
      for (NodeId u = 0; u < g.n(); ++u) {
        const Record want{w[u] >> 31, w[u] & ((1ull << 31) - 1), g.degree(u)};
        REQUIRE(outs[v].table[u] == want);
      }
    }
    REQUIRE(metrics.rounds <= round_envelope(g));
  }
}

TEST_CASE("the broadcast root is the head of the rho order") {
  for (const std::uint64_t seed : {5ull, 6ull, 7ull}) {
    const Graph g = make_random_connected(11, 0.3, seed);
    const auto w = random_weights(g, seed + 100);
    const SweepOrder order = order_by_rho(g, std::span<const std::uint64_t>(w));
    auto [outs, metrics] = rho_broadcast(g, w, {});
    for (NodeId v = 0; v < g.n(); ++v) {
      REQUIRE(outs[v].root == order.pi[0]);
    }
  }
}

TEST_CASE("equal weights elect the smallest id") {
  const Graph g = make_cycle(6);
  const std::vector<std::uint64_t> w(6, 42);
  auto [outs, metrics] = rho_broadcast(g, w, {});
  for (NodeId v = 0; v < 6; ++v) REQUIRE(outs[v].root == 0);
}

TEST_CASE("the gather tree is a BFS tree rooted at the winner") {
  const Graph g = make_random_connected(15, 0.2, 9);
  const auto w = random_weights(g, 4);
  auto [outs, metrics] = rho_broadcast(g, w, {});
  const NodeId root = outs[0].root;
  const auto dist = bfs_distances(g, root);
  std::size_t child_edges = 0;
  for (NodeId v = 0; v < g.n(); ++v) {
    REQUIRE(outs[v].dist == dist[v]);
    child_edges += outs[v].children.size();
    if (v == root) {
      REQUIRE(outs[v].parent_port == -1);
    } else {
      REQUIRE(outs[v].parent_port >= 0);
      const NodeId parent = g.neighbor(v, static_cast<NodeId>(outs[v].parent_port));
      REQUIRE(dist[parent] + 1 == dist[v]);
    }
  }
  REQUIRE(child_edges == g.n() - 1);  // a tree: one parent each, root excepted
}

TEST_CASE("broadcast round count on the two-node graph") {
  // Hand-traced: 4 wave rounds (n+2), child registration, the single upcast,
  // root completion, then two pipelined down rounds; the engine counts 9.
  const Graph g = Graph::from_edges(2, {{0, 1}});
  const std::vector<std::uint64_t> w{3, 8};
  auto [outs, metrics] = rho_broadcast(g, w, {});
  REQUIRE(metrics.rounds == 9);
  REQUIRE(outs[0].root == 1);  // 8/1 beats 3/1
  REQUIRE(outs[1].parent_port == -1);
}

TEST_CASE("broadcast rejects oversized weights") {
  const Graph g = make_cycle(4);
  std::vector<std::uint64_t> w{1, 2, 3, (1ull << 62) + 1};
  REQUIRE_THROWS_AS(rho_broadcast(g, w, {}), ConfigError);
  w[3] = 1ull << 62;  // exactly the full-mass convention is fine
  REQUIRE_NOTHROW(rho_broadcast(g, w, {}));
}

TEST_CASE("broadcast is deterministic") {
  const Graph g = make_barbell(9);
  const auto w = random_weights(g, 8);
  auto [a, ma] = rho_broadcast(g, w, {});
  auto [b, mb] = rho_broadcast(g, w, {});
  REQUIRE(ma.rounds == mb.rounds);
  REQUIRE(ma.messages_total == mb.messages_total);
  for (NodeId v = 0; v < g.n(); ++v) {
    REQUIRE(a[v].table == b[v].table);
    REQUIRE(a[v].root == b[v].root);
  }
}

TEST_CASE("distributed sweep equals the host-side sweep") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = make_random_connected(4 + seed % 11, 0.3, seed);
    const auto w = random_weights(g, seed * 3 + 1);
    const SweepOrder order = order_by_rho(g, std::span<const std::uint64_t>(w));
    const SweepResult host = sweep_conductances(g, order);
    auto [dist, metrics] = sweep_distributed(g, order, {});
    REQUIRE(dist.crossings == host.crossings);
    REQUIRE(dist.volumes == host.volumes);
    REQUIRE(dist.l_counts == host.l_counts);
    REQUIRE(dist.r_counts == host.r_counts);
    REQUIRE(dist.best_j == host.best_j);
    REQUIRE(dist.best_crossing == host.best_crossing);
    REQUIRE(dist.best_denominator == host.best_denominator);
    REQUIRE(dist.two_m == host.two_m);
    REQUIRE(metrics.rounds <= 2 + round_envelope(g));
  }
}

TEST_CASE("distributed sweep on the barbell picks the bridge prefix") {
  const Graph g = make_barbell(7);
  std::vector<std::uint64_t> w(g.n());
  for (NodeId v = 0; v < g.n(); ++v) {
    w[v] = static_cast<std::uint64_t>(g.n() - v) * g.degree(v);
  }
  const SweepOrder order = order_by_rho(g, std::span<const std::uint64_t>(w));
  auto [result, metrics] = sweep_distributed(g, order, {});
  REQUIRE(result.best_j == 3);
  REQUIRE(result.best_exact() == Rat(1, 7));
}

TEST_CASE("rebuilding the sweep from records validates the permutation") {
  std::vector<Record> dup{{0, 0, 1}, {0, 1, 0}};
  REQUIRE_THROWS_AS(sweep_from_records(dup), ContractViolation);
  std::vector<Record> oob{{0, 0, 1}, {5, 1, 0}};
  REQUIRE_THROWS_AS(sweep_from_records(oob), ContractViolation);
}

TEST_CASE("value flooding reaches everyone") {
  const Graph g = make_cycle(4);
  const Record value{7, 8, 9};
  auto [outs, metrics] = flood_value(g, 0, value, {});
  for (NodeId v = 0; v < 4; ++v) REQUIRE(outs[v] == value);
  // Eccentricity of the source plus the final silent round.
  REQUIRE(metrics.rounds == 3);
  // 0 -> {1,3}, then both forward toward 2; node 2 forwards nothing.
  REQUIRE(metrics.messages_total == 4);

  const Graph path = Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  auto [pouts, pmetrics] = flood_value(path, 2, value, {});
  for (NodeId v = 0; v < 5; ++v) REQUIRE(pouts[v] == value);
  REQUIRE(pmetrics.rounds == 3);
  REQUIRE_THROWS_AS(flood_value(path, 9, value, {}), ConfigError);
}

TEST_CASE("protocol payloads respect the strict bit budget") {
  // strict_bits is on by default in SimConfig, so completion itself proves
  // every field fit; this pins the measured ceiling too.
  const Graph g = make_barbell(11);
  std::vector<std::uint64_t> w(g.n(), 1ull << 62);
  auto [outs, metrics] = rho_broadcast(g, w, {});
  REQUIRE(metrics.budget_violations == 0);
  REQUIRE(metrics.max_bits_per_edge_round <= 6 * per_field_bit_budget(g.n(), 4));
}
