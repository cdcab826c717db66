#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "scut/common.hpp"
#include "scut/congest.hpp"
#include "scut/graph.hpp"
#include "scut/pagerank.hpp"
#include "scut/protocols.hpp"
#include "scut/rng.hpp"
#include "scut/sweep.hpp"
#include "scut/walk.hpp"

namespace scut {

// End-to-end sparse-cut search. For every sampled (source, length) pair --
// or (source, alpha) with the pagerank engine -- the pipeline is:
//   1. estimate the landing distribution from the source,
//   2. broadcast the per-node weights so everyone can order by rho,
//   3. run the distributed sweep over that order,
//   4. keep the candidate prefix cut with the smallest conductance,
// and finally flood the winner. Rounds/messages are aggregated across all
// phases of all candidates.

enum class CutEngine { randomwalk, pagerank };

struct SparseCutConfig {
  double phi = 0.1;            // target conductance guess, in (0,1)
  double balance = 0.25;       // assumed balance b, in (0, 1/2]
  double epsilon = 0.0;        // walk accuracy; 0 -> phi^2/4
  std::uint32_t c1 = 4;        // lengths drawn from {1..ceil(c1/phi)}
  std::uint64_t walks = 0;     // token count K; 0 -> walks_for_accuracy(n, 0.5)
  bool strict_accuracy = false; // derive K from epsilon instead of the default
  WalkMode mode = WalkMode::tokens;
  CutEngine engine = CutEngine::randomwalk;

  // Test hooks. Forced lists replace sampling; the override, when set,
  // replaces the simulated estimate with a host-supplied distribution
  // (called per (source, length); length 0 with the pagerank engine) and
  // skips the simulated phases entirely.
  std::vector<NodeId> forced_sources;
  std::vector<std::size_t> forced_lengths;
  std::function<std::vector<double>(NodeId, std::size_t)> distribution_override;
};

struct CandidateTrace {
  NodeId source = 0;
  std::size_t length = 0;  // randomwalk engine
  double alpha = 0.0;      // pagerank engine
  std::size_t best_j = 0;
  double best_conductance = 0.0;
};

struct CutReport {
  std::string algorithm;
  Cut cut;
  double conductance = 0.0;      // recomputed from cut.members, not caches
  double balance_measured = 0.0;
  double phi_guess = 0.0;
  bool accepted = true;          // guess loops: measured <= guess reached
  NodeId source_used = 0;
  std::size_t length_used = 0;
  double alpha_used = 0.0;
  RoundMetrics metrics;          // aggregated over every simulated phase
  std::vector<CandidateTrace> trace;
};

namespace detail {

struct BestCandidate {
  bool valid = false;
  std::uint64_t crossing = 0;
  std::uint64_t denominator = 1;
  std::vector<NodeId> members;
  NodeId order_head = 0;
  std::size_t source_idx = 0;
  std::size_t length_idx = 0;
  std::size_t best_j = 0;
  NodeId source = 0;
  std::size_t length = 0;
  double alpha = 0.0;
};

// Candidate order: smaller conductance first (exact), then earlier source
// index, then earlier length index (prefix j ties already resolved inside
// the sweep).
inline bool improves(const BestCandidate& cur, std::uint64_t crossing,
                     std::uint64_t denominator) {
  if (!cur.valid) return true;
  return compare_ratio(crossing, denominator, cur.crossing, cur.denominator) < 0;
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t counter) {
  return mix64(mix64(base ^ rng_salt::kSubSim) + counter);
}

}  // namespace detail

// One full pass of the cut search at a fixed phi. Shared by both engines.
inline CutReport sparse_cut_run(const Graph& g, const SparseCutConfig& cfg,
                                const SimConfig& sim) {
  const NodeId n = g.n();
  if (n < 2) throw ConfigError("cut search needs at least two nodes");
  if (!(cfg.phi > 0.0) || cfg.phi >= 1.0) {
    throw ConfigError("phi must lie in (0,1)");
  }
  if (!(cfg.balance > 0.0) || cfg.balance > 0.5) {
    throw ConfigError("balance must lie in (0, 1/2]");
  }
  if (cfg.c1 == 0) throw ConfigError("length cap multiplier must be positive");
  const bool pagerank = cfg.engine == CutEngine::pagerank;
  if (pagerank && cfg.phi > 0.1) {
    throw ConfigError("pagerank engine needs phi <= 1/10 so alpha = 10 phi <= 1");
  }

  const double ln_n = std::log(static_cast<double>(n));
  const std::size_t n_sources =
      static_cast<std::size_t>(std::ceil(ln_n / cfg.balance));
  const std::size_t n_lengths =
      pagerank ? 1 : static_cast<std::size_t>(std::ceil(ln_n));
  const std::size_t length_cap =
      static_cast<std::size_t>(std::ceil(static_cast<double>(cfg.c1) / cfg.phi));
  const double epsilon =
      cfg.epsilon > 0.0 ? cfg.epsilon : cfg.phi * cfg.phi / 4.0;
  const double alpha = pagerank ? 10.0 * cfg.phi : 0.0;

  std::uint64_t walks = cfg.walks;
  if (walks == 0 && (cfg.mode == WalkMode::tokens || pagerank)) {
    walks = walks_for_accuracy(n, cfg.strict_accuracy ? std::min(epsilon, 1.0) : 0.5);
  }

  CounterRng sampler(sim.seed, rng_salt::kOrchestrator, 0);
  std::vector<NodeId> sources = cfg.forced_sources;
  if (sources.empty()) {
    sources.reserve(n_sources);
    for (std::size_t i = 0; i < n_sources; ++i) {
      sources.push_back(static_cast<NodeId>(sampler.below(n)));
    }
  }
  // One length list per source, sampled fresh per pair unless forced.
  std::vector<std::vector<std::size_t>> lengths(sources.size());
  for (auto& ls : lengths) {
    if (pagerank) {
      ls = {0};
    } else if (!cfg.forced_lengths.empty()) {
      ls = cfg.forced_lengths;
    } else {
      ls.reserve(n_lengths);
      for (std::size_t j = 0; j < n_lengths; ++j) {
        ls.push_back(1 + static_cast<std::size_t>(sampler.below(length_cap)));
      }
    }
  }

  CutReport report;
  report.algorithm = pagerank ? "pagerank" : "randomwalk";
  report.phi_guess = cfg.phi;
  report.alpha_used = alpha;
  detail::BestCandidate best;
  std::uint64_t run_no = 0;

  for (std::size_t si = 0; si < sources.size(); ++si) {
    const NodeId source = sources[si];
    if (source >= n) throw ConfigError("forced source out of range");
    for (std::size_t li = 0; li < lengths[si].size(); ++li) {
      const std::size_t length = lengths[si][li];

      SweepOrder order;
      SweepResult sweep;
      if (cfg.distribution_override) {
        const std::vector<double> dist = cfg.distribution_override(source, length);
        order = order_by_rho(g, std::span<const double>(dist));
        sweep = sweep_conductances(g, order);
      } else {
        std::vector<std::uint64_t> weights;
        SimConfig phase = sim;
        if (pagerank) {
          phase.seed = detail::derive_seed(sim.seed, ++run_no);
          auto [est, m] = estimate_pagerank(g, {source, alpha, walks}, phase);
          report.metrics.absorb(m);
          weights = std::move(est.visits);
        } else {
          phase.seed = detail::derive_seed(sim.seed, ++run_no);
          auto [est, m] =
              estimate_probability(g, {source, length, walks, cfg.mode}, phase);
          report.metrics.absorb(m);
          weights = std::move(est.weights);
        }

        phase.seed = detail::derive_seed(sim.seed, ++run_no);
        auto [tables, rho_metrics] =
            rho_broadcast(g, std::span<const std::uint64_t>(weights), phase);
        report.metrics.absorb(rho_metrics);
        order = order_by_rho(g, std::span<const std::uint64_t>(weights));

        phase.seed = detail::derive_seed(sim.seed, ++run_no);
        auto [distributed, sweep_metrics] = sweep_distributed(g, order, phase);
        report.metrics.absorb(sweep_metrics);
        sweep = std::move(distributed);
      }

      report.trace.push_back({source, pagerank ? 0 : length, alpha,
                              sweep.best_j, sweep.best_conductance});
      if (detail::improves(best, sweep.best_crossing, sweep.best_denominator)) {
        best.valid = true;
        best.crossing = sweep.best_crossing;
        best.denominator = sweep.best_denominator;
        best.members.assign(order.pi.begin(),
                            order.pi.begin() + static_cast<std::ptrdiff_t>(sweep.best_j));
        best.order_head = order.pi[0];
        best.source_idx = si;
        best.length_idx = li;
        best.best_j = sweep.best_j;
        best.source = source;
        best.length = pagerank ? 0 : length;
        best.alpha = alpha;
      }
    }
  }

  // Announce the winner: all nodes know the candidate orderings, so the
  // (source index, length index, prefix size) triple identifies the cut.
  if (!cfg.distribution_override) {
    SimConfig phase = sim;
    phase.seed = detail::derive_seed(sim.seed, ++run_no);
    auto [values, flood_metrics] = flood_value(
        g, best.order_head, {best.source_idx, best.length_idx, best.best_j}, phase);
    report.metrics.absorb(flood_metrics);
  }

  report.cut = Cut::of(g, best.members);  // independent direct recompute
  report.conductance = conductance(g, report.cut);
  report.balance_measured = balance(g, report.cut);
  report.source_used = best.source;
  report.length_used = best.length;
  return report;
}

// Algorithm entry points.

inline CutReport sparse_cut_randomwalk(const Graph& g, SparseCutConfig cfg,
                                       const SimConfig& sim) {
  cfg.engine = CutEngine::randomwalk;
  return sparse_cut_run(g, cfg, sim);
}

inline CutReport sparse_cut_pagerank(const Graph& g, SparseCutConfig cfg,
                                     const SimConfig& sim) {
  cfg.engine = CutEngine::pagerank;
  return sparse_cut_run(g, cfg, sim);
}

// When phi is unknown: run the search with guesses 1/2, 1/4, 1/8, ... and
// accept the first cut whose measured conductance is at most the guess. The
// guess floor is 1/(2m); if nothing is accepted by then, the best cut seen
// is returned flagged not-accepted. The starting guess for the pagerank
// engine is 1/16, the largest power of two satisfying alpha = 10 phi <= 1
// within the phi <= 1/10 precondition.
inline CutReport guess_phi(const Graph& g, double balance, SparseCutConfig base,
                           const SimConfig& sim) {
  const bool pagerank = base.engine == CutEngine::pagerank;
  const unsigned k0 = pagerank ? 4 : 1;
  const std::uint64_t two_m = 2 * g.m();

  CutReport best;
  bool have_best = false;
  RoundMetrics total;
  std::vector<CandidateTrace> all_trace;

  for (unsigned k = k0;; ++k) {
    // Always run the starting guess, then continue while 2^-k >= 1/(2m).
    if (k > k0 && (k >= 63 || (1ull << k) > two_m)) break;
    base.phi = std::ldexp(1.0, -static_cast<int>(k));
    base.balance = balance;
    SimConfig iter = sim;
    iter.seed = mix64(mix64(sim.seed ^ rng_salt::kOrchestrator) + 0x6775 + k);
    CutReport r = sparse_cut_run(g, base, iter);
    total.absorb(r.metrics);
    all_trace.insert(all_trace.end(), r.trace.begin(), r.trace.end());

    // Accept when measured <= guess, compared exactly: phi = 2^-k, so the
    // test is crossing * 2^k <= denominator.
    const std::uint64_t den = std::min(r.cut.vol_s, two_m - r.cut.vol_s);
    const bool ok = (static_cast<unsigned __int128>(r.cut.crossing) << k) <= den;
    if (!have_best ||
        compare_ratio(r.cut.crossing, den, best.cut.crossing,
                      std::min(best.cut.vol_s, two_m - best.cut.vol_s)) < 0) {
      best = std::move(r);
      have_best = true;
    }
    if (ok) {
      best.accepted = true;
      best.metrics = std::move(total);
      best.trace = std::move(all_trace);
      best.algorithm = pagerank ? "guess-pagerank" : "guess-randomwalk";
      return best;
    }
  }
  best.accepted = false;
  best.metrics = std::move(total);
  best.trace = std::move(all_trace);
  best.algorithm = pagerank ? "guess-pagerank" : "guess-randomwalk";
  return best;
}

// Cut search around a fixed source: the phi-guessing loop with every
// distribution started from that source. The reported members are the side
// containing the source (the cluster).
inline CutReport local_cluster(const Graph& g, NodeId source, SparseCutConfig base,
                               const SimConfig& sim) {
  if (source >= g.n()) throw ConfigError("cluster source out of range");
  base.forced_sources = {source};
  const double b = base.balance;
  CutReport r = guess_phi(g, b, std::move(base), sim);
  if (!r.cut.contains(source)) {
    r.cut = Cut::of(g, r.cut.complement(g));
    r.conductance = conductance(g, r.cut);
    r.balance_measured = balance(g, r.cut);
  }
  r.algorithm = "local";
  r.source_used = source;
  return r;
}

}  // namespace scut
