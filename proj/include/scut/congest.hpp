#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "scut/common.hpp"
#include "scut/graph.hpp"
#include "scut/rng.hpp"

namespace scut {

// Synchronous round engine. Each round every node runs one step, may send at
// most one bounded-size message per incident edge per direction, and all
// messages sent in round r arrive in the inboxes of round r+1. The engine is
// bit-deterministic for a fixed (graph, program, seed) and independent of
// the order nodes are stepped in.

// A message payload: a small fixed number of integer fields. Each field must
// fit the per-field bit budget (see per_field_bit_budget); a constant number
// of poly(n)-sized integers counts as one legal message.
struct Payload {
  static constexpr std::size_t kMaxFields = 6;

  Payload() = default;
  Payload(std::initializer_list<std::uint64_t> vals) {
    for (const std::uint64_t v : vals) push(v);
  }

  void push(std::uint64_t v) {
    if (count_ == kMaxFields) {
      throw ContractViolation("payload exceeds the field limit of " +
                              std::to_string(kMaxFields));
    }
    fields_[count_++] = v;
  }

  std::uint64_t operator[](std::size_t i) const { return fields_[i]; }
  std::size_t size() const { return count_; }

  // Significant payload bits: the bit width of each field, at least one bit
  // per field. This is what the traffic metrics record.
  std::uint32_t bits() const {
    std::uint32_t total = 0;
    for (std::size_t i = 0; i < count_; ++i) {
      total += std::max<std::uint32_t>(
          1, static_cast<std::uint32_t>(std::bit_width(fields_[i])));
    }
    return total;
  }

  std::uint32_t widest_field() const {
    std::uint32_t w = 0;
    for (std::size_t i = 0; i < count_; ++i) {
      w = std::max<std::uint32_t>(w, std::bit_width(fields_[i]));
    }
    return w;
  }

 private:
  std::array<std::uint64_t, kMaxFields> fields_{};
  std::uint8_t count_ = 0;
};

// A delivered message: the local port it arrived on plus the payload.
struct Msg {
  NodeId port = 0;
  Payload payload;
};

// Per-field bit budget: c_msg * ceil(log2 n), floored at one byte per
// log-factor. The floor keeps poly(n) counts representable on the tiny
// graphs the tests use (it is inactive for n >= 256): an integer up to
// n^c_msg always fits, and so does any 32-bit count when c_msg = 4.
inline std::uint32_t per_field_bit_budget(NodeId n, std::uint32_t c_msg) {
  const std::uint32_t lg = n <= 1 ? 0 : std::bit_width(n - 1);
  return c_msg * std::max<std::uint32_t>(lg, 8);
}

struct SimConfig {
  std::uint64_t seed = 0;
  std::uint32_t c_msg = 4;          // bit-budget multiplier
  std::size_t max_rounds = 1 << 20; // safety cap
  bool strict_bits = true;          // fail (vs. count) on budget violation
  bool record_trace = false;
};

struct TraceEntry {
  std::size_t round;
  NodeId src;
  NodeId dst;
  std::uint32_t bits;
};

struct RoundMetrics {
  std::size_t rounds = 0;
  std::uint64_t messages_total = 0;
  std::uint32_t max_bits_per_edge_round = 0;
  std::uint64_t budget_violations = 0;  // only counted when !strict_bits
  std::vector<TraceEntry> trace;        // only filled when record_trace

  // Adds another phase's traffic into this aggregate.
  void absorb(const RoundMetrics& other) {
    rounds += other.rounds;
    messages_total += other.messages_total;
    max_bits_per_edge_round = std::max(max_bits_per_edge_round, other.max_bits_per_edge_round);
    budget_violations += other.budget_violations;
    trace.insert(trace.end(), other.trace.begin(), other.trace.end());
  }
};

// Thrown by run() when the round cap is hit; carries what was measured.
class SimTimeout : public std::runtime_error {
 public:
  SimTimeout(const std::string& what, RoundMetrics partial)
      : std::runtime_error(what), metrics(std::move(partial)) {}
  RoundMetrics metrics;
};

// What a node knows at start: its id, degree, its neighbors' ids (by port),
// and the network size n (standard initial knowledge; the bit budget is a
// function of n, so nodes may use it).
struct NodeEnv {
  NodeId id = 0;
  NodeId degree = 0;
  NodeId n = 0;
  std::span<const NodeId> neighbor_ids;
};

namespace detail {
struct EngineCtx {
  const Graph* g = nullptr;
  const std::size_t* off = nullptr;   // node -> first adj index
  const NodeId* rev = nullptr;        // adj index -> receiving port
  std::vector<std::vector<Msg>>* pending = nullptr;
  RoundMetrics* metrics = nullptr;
  std::uint32_t budget = 0;
  bool strict_bits = false;
  bool record_trace = false;
};
}  // namespace detail

// A node's window into one round: its inbox, its random stream, and the
// send/halt verbs. Sends land in the destination's inbox next round. The
// halt flag is a per-round vote; the engine stops once every node votes
// halt in a round that sends no messages.
class RoundIo {
 public:
  std::size_t round() const { return round_; }
  NodeId id() const { return id_; }
  NodeId degree() const { return degree_; }
  NodeId n() const { return ctx_->g->n(); }
  NodeId neighbor_id(NodeId port) const { return ctx_->g->neighbor(id_, port); }
  std::span<const Msg> inbox() const { return inbox_; }
  CounterRng& rng() { return *rng_; }
  void halt() { halted_ = true; }

  void send(NodeId port, const Payload& payload) {
    if (port >= degree_) {
      throw ContractViolation("node " + std::to_string(id_) + " sent to port " +
                              std::to_string(port) + " but has degree " +
                              std::to_string(degree_));
    }
    if (sent_[port]) {
      throw ContractViolation("node " + std::to_string(id_) +
                              " sent twice on port " + std::to_string(port) +
                              " in round " + std::to_string(round_));
    }
    if (payload.widest_field() > ctx_->budget) {
      if (ctx_->strict_bits) {
        throw BudgetViolation("payload field of " +
                                  std::to_string(payload.widest_field()) +
                                  " bits exceeds the per-field budget of " +
                                  std::to_string(ctx_->budget),
                              id_, static_cast<int>(port), round_);
      }
      ++ctx_->metrics->budget_violations;
    }
    sent_[port] = 1;
    ++sends_;
    const NodeId dst = ctx_->g->neighbor(id_, port);
    const NodeId rport = ctx_->rev[ctx_->off[id_] + port];
    (*ctx_->pending)[dst].push_back({rport, payload});
    ++ctx_->metrics->messages_total;
    const std::uint32_t bits = payload.bits();
    ctx_->metrics->max_bits_per_edge_round =
        std::max(ctx_->metrics->max_bits_per_edge_round, bits);
    if (ctx_->record_trace) ctx_->metrics->trace.push_back({round_, id_, dst, bits});
  }

 private:
  template <class P, class Observer>
  friend struct Runner;

  RoundIo(detail::EngineCtx* ctx, NodeId id, NodeId degree, std::size_t round,
          std::span<const Msg> inbox, CounterRng* rng, char* sent)
      : ctx_(ctx), id_(id), degree_(degree), round_(round), inbox_(inbox),
        rng_(rng), sent_(sent) {
    std::fill_n(sent_, degree_, 0);
  }

  detail::EngineCtx* ctx_;
  NodeId id_;
  NodeId degree_;
  std::size_t round_;
  std::span<const Msg> inbox_;
  CounterRng* rng_;
  char* sent_;
  bool halted_ = false;
  std::uint64_t sends_ = 0;
};

template <class P>
struct SimResult {
  std::vector<typename P::Output> outputs;
  RoundMetrics metrics;
  bool completed = false;  // false: stopped by the round cap
};

struct NoObserver {
  template <class State>
  void operator()(std::size_t, const std::vector<State>&) const {}
};

// A node program P supplies:
//   using State = ...; using Output = ...;
//   State init(const NodeEnv& env) const;
//   void on_round(State& st, RoundIo& io) const;
//   Output report(const State& st) const;
// on_round must be deterministic given the state, the inbox, and io.rng(),
// and may address neighbors only by port.
template <class P, class Observer>
struct Runner {
  static SimResult<P> go(const Graph& g, const P& prog, const SimConfig& cfg,
                         const std::vector<NodeId>* schedule, Observer& observe) {
    if (cfg.max_rounds == 0) throw ConfigError("max_rounds must be positive");
    if (cfg.c_msg == 0) throw ConfigError("c_msg must be positive");
    const NodeId n = g.n();
    if (schedule) {
      std::vector<char> hit(n, 0);
      if (schedule->size() != n) throw ConfigError("schedule must list every node once");
      for (const NodeId v : *schedule) {
        if (v >= n || hit[v]) throw ConfigError("schedule is not a permutation");
        hit[v] = 1;
      }
    }

    std::vector<std::size_t> off(n + 1, 0);
    NodeId max_degree = 0;
    for (NodeId v = 0; v < n; ++v) {
      off[v + 1] = off[v] + g.degree(v);
      max_degree = std::max(max_degree, g.degree(v));
    }
    const std::vector<NodeId> rev = g.reverse_ports();

    std::vector<typename P::State> states;
    states.reserve(n);
    for (NodeId v = 0; v < n; ++v) {
      states.push_back(prog.init(NodeEnv{v, g.degree(v), n, g.neighbors(v)}));
    }

    SimResult<P> result;
    std::vector<std::vector<Msg>> inbox(n), pending(n);
    std::vector<char> sent_scratch(std::max<NodeId>(max_degree, 1), 0);
    detail::EngineCtx ctx;
    ctx.g = &g;
    ctx.off = off.data();
    ctx.rev = rev.data();
    ctx.pending = &pending;
    ctx.metrics = &result.metrics;
    ctx.budget = per_field_bit_budget(n, cfg.c_msg);
    ctx.strict_bits = cfg.strict_bits;
    ctx.record_trace = cfg.record_trace;

    for (std::size_t round = 1;; ++round) {
      if (round > cfg.max_rounds) break;
      bool all_halted = true;
      std::uint64_t sends = 0;
      for (NodeId k = 0; k < n; ++k) {
        const NodeId v = schedule ? (*schedule)[k] : k;
        auto& in = inbox[v];
        // Each port delivers at most one message, so sorting by port gives a
        // canonical inbox regardless of the order senders were stepped in.
        std::sort(in.begin(), in.end(),
                  [](const Msg& a, const Msg& b) { return a.port < b.port; });
        CounterRng rng = per_node_rng(cfg.seed, v, round);
        RoundIo io(&ctx, v, g.degree(v), round, {in.data(), in.size()}, &rng,
                   sent_scratch.data());
        prog.on_round(states[v], io);
        if (!io.halted_) all_halted = false;
        sends += io.sends_;
        in.clear();
      }
      result.metrics.rounds = round;
      observe(round, states);
      std::swap(inbox, pending);  // pending -> next round's inboxes
      if (all_halted && sends == 0) {
        result.completed = true;
        break;
      }
    }

    result.outputs.reserve(n);
    for (NodeId v = 0; v < n; ++v) result.outputs.push_back(prog.report(states[v]));
    return result;
  }
};

// Runs the program to global halt or the round cap; never throws on the cap
// (check .completed). The optional schedule permutes the in-round step order
// (results must not depend on it); the optional observer sees the state
// vector after each round.
template <class P, class Observer = NoObserver>
SimResult<P> run_rounds(const Graph& g, const P& prog, const SimConfig& cfg,
                        const std::vector<NodeId>* schedule = nullptr,
                        Observer observe = Observer{}) {
  return Runner<P, Observer>::go(g, prog, cfg, schedule, observe);
}

// Like run_rounds, but hitting the round cap is an error.
template <class P, class Observer = NoObserver>
SimResult<P> run(const Graph& g, const P& prog, const SimConfig& cfg,
                 const std::vector<NodeId>* schedule = nullptr,
                 Observer observe = Observer{}) {
  SimResult<P> r = Runner<P, Observer>::go(g, prog, cfg, schedule, observe);
  if (!r.completed) {
    throw SimTimeout("simulation did not halt within " +
                         std::to_string(cfg.max_rounds) + " rounds",
                     std::move(r.metrics));
  }
  return r;
}

}  // namespace scut
