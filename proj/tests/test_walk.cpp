// Distributed landing-probability estimation, both transports: token counts
// (sampled) and fixed-point mass diffusion (deterministic).

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "scut/generators.hpp"
#include "scut/graph.hpp"
#include "scut/oracle.hpp"
#include "scut/walk.hpp"

using namespace scut;

TEST_CASE("walk count for a target accuracy") {
  REQUIRE(walks_for_accuracy(8, 0.5) == 2130);
  REQUIRE(walks_for_accuracy(2, 1.0) == 12);
  REQUIRE_THROWS_AS(walks_for_accuracy(8, 0.0), ConfigError);
  REQUIRE_THROWS_AS(walks_for_accuracy(8, 1.5), ConfigError);
  REQUIRE_THROWS_AS(walks_for_accuracy(1, 0.5), ConfigError);
}

TEST_CASE("round count is always length plus one") {
  const Graph c8 = make_cycle(8);
  const Graph b7 = make_barbell(7);
  for (const std::size_t len : {0u, 1u, 5u, 20u}) {
    for (const WalkMode mode : {WalkMode::tokens, WalkMode::diffusion}) {
      auto [est_c, m_c] = estimate_probability(c8, {0, len, 16, mode}, {});
      REQUIRE(m_c.rounds == len + 1);
      REQUIRE(est_c.length == len);
      auto [est_b, m_b] = estimate_probability(b7, {2, len, 16, mode}, {});
      REQUIRE(m_b.rounds == len + 1);
    }
  }
}

TEST_CASE("length zero is the indicator at the source") {
  const Graph g = make_cycle(5);
  for (const WalkMode mode : {WalkMode::tokens, WalkMode::diffusion}) {
    auto [est, metrics] = estimate_probability(g, {3, 0, 7, mode}, {});
    for (NodeId v = 0; v < 5; ++v) {
      REQUIRE(est.values[v] == (v == 3 ? 1.0 : 0.0));
    }
    REQUIRE(metrics.rounds == 1);
  }
}

TEST_CASE("token weights conserve the walk count") {
  const Graph g = make_barbell(9);
  for (const std::size_t len : {1u, 4u, 11u}) {
    auto [est, metrics] = estimate_probability(g, {0, len, 500, WalkMode::tokens}, {});
    REQUIRE(std::accumulate(est.weights.begin(), est.weights.end(),
                            std::uint64_t{0}) == 500);
    REQUIRE(est.weight_total == 500);
    REQUIRE(est.walks == 500);
  }
}

TEST_CASE("diffusion conserves every unit of mass") {
  // The per-node split is floor division with the remainder spread one unit
  // per lowest port, so the total is exactly 2^62 after any number of steps.
  for (const Graph& g : {make_barbell(9), make_cycle(7), make_complete(5)}) {
    for (const std::size_t len : {1u, 6u, 13u}) {
      auto [est, metrics] =
          estimate_probability(g, {1, len, 1, WalkMode::diffusion}, {});
      REQUIRE(std::accumulate(est.weights.begin(), est.weights.end(),
                              std::uint64_t{0}) == DiffusionProgram::kOne);
    }
  }
}

TEST_CASE("diffusion tracks the exact distribution to fixed-point precision") {
  const Graph g = make_barbell(7);
  for (const std::size_t len : {1u, 3u, 8u}) {
    auto [est, metrics] =
        estimate_probability(g, {1, len, 1, WalkMode::diffusion}, {});
    const auto exact = exact_walk_distribution(g, 1, len);
    for (NodeId v = 0; v < g.n(); ++v) {
      REQUIRE(est.values[v] == Catch::Approx(exact[v]).margin(1e-9));
    }
  }
}

TEST_CASE("single-edge walk is exact in diffusion mode") {
  const Graph g = Graph::from_edges(2, {{0, 1}});
  auto [odd, m1] = estimate_probability(g, {0, 3, 1, WalkMode::diffusion}, {});
  REQUIRE(odd.values == std::vector<double>{0.0, 1.0});
  auto [even, m2] = estimate_probability(g, {0, 4, 1, WalkMode::diffusion}, {});
  REQUIRE(even.values == std::vector<double>{1.0, 0.0});
}

TEST_CASE("token estimates approach the exact distribution") {
  const Graph g = make_cycle(8);
  const double eps = 0.5;
  const std::uint64_t walks = walks_for_accuracy(8, eps);
  SimConfig sim;
  sim.seed = 7;
  auto [est, metrics] = estimate_probability(g, {0, 5, walks, WalkMode::tokens}, sim);
  const auto exact = exact_walk_distribution(g, 0, 5);
  for (NodeId v = 0; v < 8; ++v) {
    REQUIRE(std::abs(est.values[v] - exact[v]) <= eps / 8.0);
  }
}

TEST_CASE("single-token landings are unbiased across seeds") {
  const Graph g = make_cycle(4);
  int landed_at_1 = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    SimConfig sim;
    sim.seed = seed;
    auto [est, metrics] = estimate_probability(g, {0, 1, 1, WalkMode::tokens}, sim);
    REQUIRE(est.weights[0] == 0);
    REQUIRE(est.weights[2] == 0);
    REQUIRE(est.weights[1] + est.weights[3] == 1);
    landed_at_1 += static_cast<int>(est.weights[1]);
  }
  // Binomial(1000, 1/2): +-100 is over 6 sigma.
  REQUIRE(landed_at_1 > 400);
  REQUIRE(landed_at_1 < 600);
}

TEST_CASE("same seed, same estimate; different seed, different tokens") {
  const Graph g = make_barbell(9);
  SimConfig a;
  a.seed = 5;
  auto [e1, m1] = estimate_probability(g, {0, 7, 300, WalkMode::tokens}, a);
  auto [e2, m2] = estimate_probability(g, {0, 7, 300, WalkMode::tokens}, a);
  REQUIRE(e1.weights == e2.weights);
  SimConfig b;
  b.seed = 6;
  auto [e3, m3] = estimate_probability(g, {0, 7, 300, WalkMode::tokens}, b);
  REQUIRE(e1.weights != e3.weights);
}

TEST_CASE("payloads are bare counts, never token ids") {
  // 1000 tokens on one edge would need 10 bits as a count; any scheme that
  // names tokens would need orders of magnitude more.
  const Graph g = make_cycle(4);
  SimConfig sim;
  sim.seed = 3;
  auto [est, metrics] = estimate_probability(g, {0, 3, 1000, WalkMode::tokens}, sim);
  REQUIRE(metrics.max_bits_per_edge_round <= 10);

  // Diffusion sends each mass value as two 31-bit halves.
  auto [d, dm] = estimate_probability(g, {0, 3, 1, WalkMode::diffusion}, sim);
  REQUIRE(dm.max_bits_per_edge_round <= 62);
}

TEST_CASE("walk configuration validation") {
  const Graph g = make_cycle(4);
  REQUIRE_THROWS_AS(estimate_probability(g, {9, 1, 1, WalkMode::tokens}, {}),
                    ConfigError);
  REQUIRE_THROWS_AS(estimate_probability(g, {0, 1, 0, WalkMode::tokens}, {}),
                    ConfigError);
  SimConfig tight;
  tight.max_rounds = 4;
  REQUIRE_THROWS_AS(estimate_probability(g, {0, 5, 1, WalkMode::tokens}, tight),
                    ConfigError);
  // 2^33 tokens cannot be counted within a 32-bit field budget on n=4.
  REQUIRE_THROWS_AS(
      estimate_probability(g, {0, 1, 1ull << 33, WalkMode::tokens}, {}),
      ConfigError);
}

TEST_CASE("both transports agree with the oracle on the 8-cycle") {
  const Graph g = make_cycle(8);
  const auto exact = exact_walk_distribution(g, 2, 6);
  SimConfig sim;
  sim.seed = 11;
  auto [tok, tm] =
      estimate_probability(g, {2, 6, walks_for_accuracy(8, 0.5), WalkMode::tokens}, sim);
  auto [dif, dm] = estimate_probability(g, {2, 6, 1, WalkMode::diffusion}, sim);
  for (NodeId v = 0; v < 8; ++v) {
    REQUIRE(std::abs(tok.values[v] - exact[v]) <= 0.5 / 8.0);
    REQUIRE(dif.values[v] == Catch::Approx(exact[v]).margin(1e-9));
  }
}
