#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "scut/common.hpp"
#include "scut/congest.hpp"
#include "scut/graph.hpp"

namespace scut {

// Distributed estimation of the l-step random-walk landing distribution
// from a source node. Token mode forwards integer token counts (Monte
// Carlo); diffusion mode forwards fixed-point probability mass and is
// noise-free. Both use exactly l forwarding rounds plus one setup/collection
// round, so the engine reports l + 1 rounds.

enum class WalkMode { tokens, diffusion };

struct WalkConfig {
  NodeId source = 0;
  std::size_t length = 0;     // l; 0 returns the indicator at the source
  std::uint64_t walks = 1;    // K, token mode only
  WalkMode mode = WalkMode::tokens;
};

struct ProbEstimate {
  std::vector<double> values;          // per-node p~(i)
  std::vector<std::uint64_t> weights;  // raw integer weights behind values
  std::uint64_t weight_total = 0;      // values[i] = weights[i] / weight_total
  std::uint64_t walks = 0;             // K (token mode; 0 in diffusion mode)
  std::size_t length = 0;
  double epsilon_target = 0.0;         // the eps K was derived from, if any
};

// K = ceil(4 n^2 ln n / eps^2): enough walks that every landing probability
// is within eps/n of the truth with high probability.
inline std::uint64_t walks_for_accuracy(NodeId n, double epsilon) {
  if (!(epsilon > 0.0) || epsilon > 1.0) {
    throw ConfigError("epsilon must be in (0,1]");
  }
  if (n < 2) throw ConfigError("walks_for_accuracy needs n >= 2");
  const double nn = static_cast<double>(n);
  return static_cast<std::uint64_t>(
      std::ceil(4.0 * nn * nn * std::log(nn) / (epsilon * epsilon)));
}

// Token mode: K tokens start at the source; each forwarding round every
// token independently moves to a uniform neighbor, sent as one per-port
// count. Tokens carry no ids of any kind -- payloads are bare counts.
struct TokenWalkProgram {
  NodeId source = 0;
  std::size_t length = 0;
  std::uint64_t walks = 1;

  struct State {
    NodeId degree = 0;
    bool is_source = false;
    std::uint64_t resident = 0;  // tokens here at the current walk position
  };
  using Output = std::uint64_t;

  State init(const NodeEnv& env) const {
    return State{env.degree, env.id == source, 0};
  }

  void on_round(State& st, RoundIo& io) const {
    std::uint64_t have = 0;
    if (io.round() == 1) {
      have = st.is_source ? walks : 0;
    } else {
      for (const Msg& m : io.inbox()) have += m.payload[0];
    }
    st.resident = have;
    if (io.round() > length) {
      // Collection round: the counts received now are the final positions.
      io.halt();
      return;
    }
    if (have > 0 && st.degree > 0) {
      std::vector<std::uint64_t> per_port(st.degree, 0);
      for (std::uint64_t t = 0; t < have; ++t) {
        ++per_port[io.rng().below(st.degree)];
      }
      for (NodeId p = 0; p < st.degree; ++p) {
        if (per_port[p] > 0) io.send(p, Payload{per_port[p]});
      }
    }
  }

  Output report(const State& st) const { return st.resident; }
};

// Diffusion mode: probability mass in Q62 fixed point (1.0 = 2^62). Each
// round a node splits its mass by floor division among its ports, giving
// the remainder one unit each to the lowest ports, so total mass is
// conserved exactly. Masses travel as (hi, lo) 31-bit halves.
struct DiffusionProgram {
  static constexpr std::uint64_t kOne = 1ull << 62;
  static constexpr std::uint64_t kLoMask = (1ull << 31) - 1;

  NodeId source = 0;
  std::size_t length = 0;

  struct State {
    NodeId degree = 0;
    bool is_source = false;
    std::uint64_t mass = 0;
  };
  using Output = std::uint64_t;

  State init(const NodeEnv& env) const {
    return State{env.degree, env.id == source, 0};
  }

  void on_round(State& st, RoundIo& io) const {
    std::uint64_t have = 0;
    if (io.round() == 1) {
      have = st.is_source ? kOne : 0;
    } else {
      for (const Msg& m : io.inbox()) {
        have += (m.payload[0] << 31) | m.payload[1];
      }
    }
    st.mass = have;
    if (io.round() > length) {
      io.halt();
      return;
    }
    if (have > 0 && st.degree > 0) {
      const std::uint64_t share = have / st.degree;
      const std::uint64_t extra = have % st.degree;  // one unit to lowest ports
      for (NodeId p = 0; p < st.degree; ++p) {
        const std::uint64_t amount = share + (p < extra ? 1 : 0);
        if (amount > 0) io.send(p, Payload{amount >> 31, amount & kLoMask});
      }
    }
  }

  Output report(const State& st) const { return st.mass; }
};

// Runs the configured walk and packages the per-node weights. The engine
// always reports exactly length + 1 rounds: length forwarding rounds plus
// the one setup/collection round (the documented setup constant is 1).
inline std::pair<ProbEstimate, RoundMetrics> estimate_probability(
    const Graph& g, const WalkConfig& cfg, const SimConfig& sim) {
  if (cfg.source >= g.n()) throw ConfigError("walk source out of range");
  if (cfg.length > sim.max_rounds) {
    throw ConfigError("walk length exceeds max_rounds");
  }
  SimConfig eff = sim;
  eff.max_rounds = cfg.length + 1;

  ProbEstimate est;
  est.length = cfg.length;
  RoundMetrics metrics;
  if (cfg.mode == WalkMode::tokens) {
    if (cfg.walks == 0) throw ConfigError("token mode needs at least one walk");
    if (std::bit_width(cfg.walks) > per_field_bit_budget(g.n(), sim.c_msg)) {
      throw ConfigError("walk count does not fit the message bit budget");
    }
    auto r = run(g, TokenWalkProgram{cfg.source, cfg.length, cfg.walks}, eff);
    est.weights = std::move(r.outputs);
    est.weight_total = cfg.walks;
    est.walks = cfg.walks;
    metrics = std::move(r.metrics);
  } else {
    auto r = run(g, DiffusionProgram{cfg.source, cfg.length}, eff);
    est.weights = std::move(r.outputs);
    est.weight_total = DiffusionProgram::kOne;
    metrics = std::move(r.metrics);
  }
  est.values.resize(g.n());
  for (NodeId v = 0; v < g.n(); ++v) {
    est.values[v] = static_cast<double>(est.weights[v]) /
                    static_cast<double>(est.weight_total);
  }
  return {std::move(est), std::move(metrics)};
}

}  // namespace scut
