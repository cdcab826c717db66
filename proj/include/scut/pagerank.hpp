#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "scut/common.hpp"
#include "scut/congest.hpp"
#include "scut/graph.hpp"

namespace scut {

// Monte-Carlo personalized PageRank: K tokens start at the source; each
// round every live token terminates with probability alpha and otherwise
// moves to a uniform neighbor. Every token arrival (including the initial
// placement at the source) counts as one visit, which makes
// visits * alpha / K an unbiased estimate of the PageRank value.

struct PageRankConfig {
  NodeId source = 0;
  double alpha = 0.2;        // reset probability, in (0,1]
  std::uint64_t walks = 1;   // K
};

struct PageRankEstimate {
  std::vector<double> values;          // p~(v) = visits[v] * alpha / K
  std::vector<std::uint64_t> visits;   // eta_v
  std::uint64_t walks = 0;
  double alpha = 0.0;
  std::uint64_t moves_total = 0;       // successful token moves, all nodes
  std::size_t rounds_used = 0;
};

// All K walks die within this many rounds with high probability: a walk
// survives t rounds with probability (1-alpha)^t.
inline std::size_t pagerank_round_cap(NodeId n, std::uint64_t walks, double alpha) {
  const double cap =
      std::ceil(8.0 * std::log(static_cast<double>(n) * static_cast<double>(walks)) /
                alpha);
  return cap < 1.0 ? 1 : static_cast<std::size_t>(cap);
}

struct PageRankProgram {
  NodeId source = 0;
  double alpha = 0.2;
  std::uint64_t walks = 1;

  struct State {
    NodeId degree = 0;
    bool is_source = false;
    std::uint64_t visits = 0;
    std::uint64_t sent_tokens = 0;
  };
  struct Output {
    std::uint64_t visits = 0;
    std::uint64_t sent_tokens = 0;
  };

  State init(const NodeEnv& env) const {
    return State{env.degree, env.id == source, 0, 0};
  }

  void on_round(State& st, RoundIo& io) const {
    std::uint64_t arrivals = 0;
    if (io.round() == 1) {
      arrivals = st.is_source ? walks : 0;
    } else {
      for (const Msg& m : io.inbox()) arrivals += m.payload[0];
    }
    st.visits += arrivals;
    // Every node votes halt every round; the engine keeps going as long as
    // any token moved, so the run ends exactly when the last token dies.
    io.halt();
    if (arrivals == 0 || st.degree == 0) return;
    std::vector<std::uint64_t> per_port(st.degree, 0);
    std::uint64_t moved = 0;
    for (std::uint64_t t = 0; t < arrivals; ++t) {
      if (io.rng().next_double() < alpha) continue;  // token terminates
      ++per_port[io.rng().below(st.degree)];
      ++moved;
    }
    st.sent_tokens += moved;
    for (NodeId p = 0; p < st.degree; ++p) {
      if (per_port[p] > 0) io.send(p, Payload{per_port[p]});
    }
  }

  Output report(const State& st) const { return {st.visits, st.sent_tokens}; }
};

// Thrown when walks outlive the round cap; carries the partial counts.
class PagerankTimeout : public SimTimeout {
 public:
  PagerankTimeout(const std::string& what, RoundMetrics m, PageRankEstimate got)
      : SimTimeout(what, std::move(m)), partial(std::move(got)) {}
  PageRankEstimate partial;
};

inline std::pair<PageRankEstimate, RoundMetrics> estimate_pagerank(
    const Graph& g, const PageRankConfig& cfg, const SimConfig& sim) {
  if (cfg.source >= g.n()) throw ConfigError("pagerank source out of range");
  if (!(cfg.alpha > 0.0) || cfg.alpha > 1.0) {
    throw ConfigError("reset probability must be in (0,1]");
  }
  if (cfg.walks == 0) throw ConfigError("need at least one walk");
  if (std::bit_width(cfg.walks) > per_field_bit_budget(g.n(), sim.c_msg)) {
    throw ConfigError("walk count does not fit the message bit budget");
  }
  SimConfig eff = sim;
  eff.max_rounds = std::min(sim.max_rounds,
                            pagerank_round_cap(g.n(), cfg.walks, cfg.alpha));

  auto r = run_rounds(g, PageRankProgram{cfg.source, cfg.alpha, cfg.walks}, eff);
  PageRankEstimate est;
  est.visits.resize(g.n());
  est.values.resize(g.n());
  est.walks = cfg.walks;
  est.alpha = cfg.alpha;
  est.rounds_used = r.metrics.rounds;
  for (NodeId v = 0; v < g.n(); ++v) {
    est.visits[v] = r.outputs[v].visits;
    est.moves_total += r.outputs[v].sent_tokens;
    est.values[v] = static_cast<double>(est.visits[v]) * cfg.alpha /
                    static_cast<double>(cfg.walks);
  }
  if (!r.completed) {
    throw PagerankTimeout("pagerank walks outlived the round cap of " +
                              std::to_string(eff.max_rounds),
                          std::move(r.metrics), std::move(est));
  }
  return {std::move(est), std::move(r.metrics)};
}

struct SanityReport {
  bool pass = false;
  double max_abs_dev = 0.0;
  NodeId worst_node = 0;
};

// Max-deviation check of an estimate against a ground-truth vector.
inline SanityReport exactness_sanity(std::span<const double> estimate,
                                     std::span<const double> oracle, double tol) {
  if (estimate.size() != oracle.size()) {
    throw ConfigError("estimate and oracle node sets differ");
  }
  SanityReport rep;
  for (std::size_t v = 0; v < estimate.size(); ++v) {
    const double dev = std::abs(estimate[v] - oracle[v]);
    if (dev > rep.max_abs_dev) {
      rep.max_abs_dev = dev;
      rep.worst_node = static_cast<NodeId>(v);
    }
  }
  rep.pass = rep.max_abs_dev <= tol;
  return rep;
}

inline SanityReport exactness_sanity(const PageRankEstimate& estimate,
                                     std::span<const double> oracle, double tol) {
  return exactness_sanity(std::span<const double>(estimate.values), oracle, tol);
}

}  // namespace scut
