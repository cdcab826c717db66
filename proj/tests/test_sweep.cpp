// Sweep-cut machinery: the rho ordering, the incremental crossing/volume
// recurrences, and exact argmin selection.

#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <numeric>
#include <vector>

#include "scut/generators.hpp"
#include "scut/graph.hpp"
#include "scut/rng.hpp"
#include "scut/sweep.hpp"
#include "scut/walk.hpp"

using namespace scut;

namespace {

// Weights that make the rho order exactly 0,1,2,...: w(v) = (n-v) * d(v).
std::vector<std::uint64_t> identity_weights(const Graph& g) {
  std::vector<std::uint64_t> w(g.n());
  for (NodeId v = 0; v < g.n(); ++v) {
    w[v] = static_cast<std::uint64_t>(g.n() - v) * g.degree(v);
  }
  return w;
}

}  // namespace

TEST_CASE("ordering sorts by rho, ties by id") {
  const Graph g = make_complete(5);
  const std::vector<std::uint64_t> equal(5, 7);
  const SweepOrder o = order_by_rho(g, std::span<const std::uint64_t>(equal));
  REQUIRE(o.pi == std::vector<NodeId>{0, 1, 2, 3, 4});
  for (std::size_t k = 0; k < 5; ++k) REQUIRE(o.pos[o.pi[k]] == k);

  // Star: center 0 (degree 4), leaves degree 1. Leaf weight 2 beats center
  // weight 7 (2/1 > 7/4).
  const Graph star = Graph::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  const std::vector<std::uint64_t> w{7, 2, 0, 2, 1};
  const SweepOrder s = order_by_rho(star, std::span<const std::uint64_t>(w));
  REQUIRE(s.pi == std::vector<NodeId>{1, 3, 0, 4, 2});  // 2/1, 2/1, 7/4, 1/1, 0
  REQUIRE(s.rho[0] == Catch::Approx(7.0 / 4.0));
}

TEST_CASE("sweep on the 4-cycle in id order") {
  const Graph g = make_cycle(4);
  const SweepOrder o = order_by_rho(g, std::span<const std::uint64_t>(identity_weights(g)));
  REQUIRE(o.pi == std::vector<NodeId>{0, 1, 2, 3});
  const SweepResult r = sweep_conductances(g, o);
  REQUIRE(r.crossings == std::vector<std::uint64_t>{2, 2, 2});
  REQUIRE(r.volumes == std::vector<std::uint64_t>{2, 4, 6});
  REQUIRE(r.best_j == 2);
  REQUIRE(r.best_exact() == Rat(1, 2));
  REQUIRE(r.conductances[0] == 1.0);
  REQUIRE(r.conductances[1] == 0.5);
  REQUIRE(r.conductances[2] == 1.0);
}

TEST_CASE("sweep on the 7-node barbell finds the bridge prefix") {
  const Graph g = make_barbell(7);
  const SweepOrder o = order_by_rho(g, std::span<const std::uint64_t>(identity_weights(g)));
  const SweepResult r = sweep_conductances(g, o);
  REQUIRE(r.best_j == 3);  // {0,1,2}; the tie at j=4 loses to the smaller j
  REQUIRE(r.best_crossing == 1);
  REQUIRE(r.best_denominator == 7);
  REQUIRE(r.best_exact() == Rat(1, 7));
  REQUIRE(r.conductance_exact(4) == Rat(1, 7));
  REQUIRE(prefix_cut(g, o, r.best_j).members == std::vector<NodeId>{0, 1, 2});
}

TEST_CASE("a path's best prefix is the first tie") {
  const Graph g = Graph::from_edges(3, {{0, 1}, {1, 2}});
  const SweepOrder o = order_by_rho(g, std::span<const std::uint64_t>(identity_weights(g)));
  const SweepResult r = sweep_conductances(g, o);
  REQUIRE(r.best_j == 1);
  REQUIRE(r.best_exact() == Rat(1, 1));
}

TEST_CASE("recurrences match direct cut accounting on random inputs") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = make_random_connected(14, 0.25, seed);
    CounterRng rng(seed, 0xabcdef, 0);
    std::vector<std::uint64_t> w(g.n());
    for (auto& x : w) x = rng.below(1000);  // zero weights included
    const SweepOrder o = order_by_rho(g, std::span<const std::uint64_t>(w));
    const SweepResult r = sweep_conductances(g, o);

    std::uint64_t vol_check = 0;
    for (std::size_t j = 1; j < g.n(); ++j) {
      const Cut c = prefix_cut(g, o, j);
      REQUIRE(r.crossings[j - 1] == c.crossing);
      REQUIRE(r.volumes[j - 1] == c.vol_s);
      REQUIRE(r.conductance_exact(j) == conductance_exact(g, c));
      vol_check += g.degree(o.pi[j - 1]);
      REQUIRE(r.volumes[j - 1] == vol_check);  // volumes telescope
      REQUIRE(r.l_counts[j - 1] + r.r_counts[j - 1] == g.degree(o.pi[j - 1]));
    }

    // The selected argmin is exactly minimal and earliest.
    for (std::size_t j = 1; j < g.n(); ++j) {
      const int cmp = compare_ratio(
          r.crossings[j - 1], std::min(r.volumes[j - 1], r.two_m - r.volumes[j - 1]),
          r.best_crossing, r.best_denominator);
      REQUIRE(cmp >= 0);
      if (j < r.best_j) REQUIRE(cmp > 0);
    }
  }
}

TEST_CASE("reversing the order sweeps the complements") {
  const Graph g = make_random_connected(12, 0.3, 3);
  CounterRng rng(9, 1, 2);
  std::vector<std::uint64_t> w(g.n());
  for (auto& x : w) x = rng.below(50);
  const SweepOrder o = order_by_rho(g, std::span<const std::uint64_t>(w));

  SweepOrder rev;
  rev.pi.assign(o.pi.rbegin(), o.pi.rend());
  rev.pos.resize(g.n());
  for (std::size_t k = 0; k < rev.pi.size(); ++k) rev.pos[rev.pi[k]] = k;
  rev.rho = o.rho;

  const SweepResult a = sweep_conductances(g, o);
  const SweepResult b = sweep_conductances(g, rev);
  const std::size_t n = g.n();
  for (std::size_t j = 1; j < n; ++j) {
    // Prefix j of the reversed order is the complement of prefix n-j.
    REQUIRE(b.crossings[j - 1] == a.crossings[n - j - 1]);
    REQUIRE(b.volumes[j - 1] == a.two_m - a.volumes[n - j - 1]);
    REQUIRE(b.conductance_exact(j) == a.conductance_exact(n - j));
  }
}

TEST_CASE("orderings from estimates use the integer weights") {
  const Graph g = make_barbell(7);
  auto [est, metrics] = estimate_probability(g, {1, 6, 1, WalkMode::diffusion}, {});
  const SweepOrder o = order_by_rho(g, est);
  // Same permutation as ordering the raw weights directly.
  const SweepOrder direct = order_by_rho(g, std::span<const std::uint64_t>(est.weights));
  REQUIRE(o.pi == direct.pi);
  // The reported rho uses the normalized values.
  for (NodeId v = 0; v < g.n(); ++v) {
    REQUIRE(o.rho[v] == Catch::Approx(est.values[v] / g.degree(v)));
  }
  // Mass started inside the left clique should keep the whole clique ahead
  // of the right one after a short walk.
  const SweepResult r = sweep_conductances(g, o);
  REQUIRE(prefix_cut(g, o, 3).members == std::vector<NodeId>{0, 1, 2});
  REQUIRE(r.best_exact() == Rat(1, 7));
}

TEST_CASE("two nodes have exactly one prefix") {
  const Graph g = Graph::from_edges(2, {{0, 1}});
  const std::vector<std::uint64_t> w{5, 1};
  const SweepResult r =
      sweep_conductances(g, order_by_rho(g, std::span<const std::uint64_t>(w)));
  REQUIRE(r.best_j == 1);
  REQUIRE(r.crossings == std::vector<std::uint64_t>{1});
  REQUIRE(r.best_exact() == Rat(1, 1));
}

TEST_CASE("sweep input validation") {
  const Graph g = make_cycle(4);
  const std::vector<std::uint64_t> short_w{1, 2};
  REQUIRE_THROWS_AS(order_by_rho(g, std::span<const std::uint64_t>(short_w)),
                    ConfigError);
  const std::vector<double> short_d{0.5, 0.5};
  REQUIRE_THROWS_AS(order_by_rho(g, std::span<const double>(short_d)), ConfigError);
  SweepOrder bad;
  bad.pi = {0, 1};
  REQUIRE_THROWS_AS(sweep_conductances(g, bad), ConfigError);
  const SweepOrder o = order_by_rho(g, std::span<const std::uint64_t>(identity_weights(g)));
  REQUIRE_THROWS_AS(prefix_cut(g, o, 0), ConfigError);
  REQUIRE_THROWS_AS(prefix_cut(g, o, 4), ConfigError);
}
