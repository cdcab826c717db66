#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "scut/common.hpp"
#include "scut/congest.hpp"
#include "scut/graph.hpp"
#include "scut/rational.hpp"
#include "scut/sweep.hpp"

namespace scut {

// Distributed building blocks shared by the cut algorithms:
//  - GatherFloodProgram: elect the best-ranked node as root, grow a BFS tree
//    from it, upcast one record per node to the root (pipelined), then flood
//    the whole table back down, so every node ends up with all n records.
//  - PositionExchangeProgram: one-shot neighbor exchange of sweep positions.
//  - FloodValueProgram: broadcast one small value from a source.
// GatherFlood finishes within roughly 3n + 2D + 10 rounds: an (n+2)-round
// rank wave, one child-registration round, and two pipelined passes of n
// records bounded by n + D each.

namespace tag {
constexpr std::uint64_t kRank = 1;
constexpr std::uint64_t kChild = 2;
constexpr std::uint64_t kUp = 3;
constexpr std::uint64_t kDown = 4;
constexpr std::uint64_t kEnd = 5;
}  // namespace tag

using Record = std::array<std::uint64_t, 3>;

// Rank policy for rho values: a record is (w_hi, w_lo, degree) with the
// 62-bit weight split into 31-bit halves; rank compares w/degree exactly,
// larger first, ties to the smaller id. The winner is the sweep-order head.
struct RhoRankPolicy {
  static bool better(const Record& a, NodeId ida, const Record& b, NodeId idb) {
    const std::uint64_t wa = (a[0] << 31) | a[1];
    const std::uint64_t wb = (b[0] << 31) | b[1];
    const int c = compare_ratio(wa, a[2], wb, b[2]);
    if (c != 0) return c > 0;
    return ida < idb;
  }
};

// Rank policy for sweep positions: record (pos, L, R), smaller pos first.
// Positions are unique, so no id tie-break is needed.
struct PositionRankPolicy {
  static bool better(const Record& a, NodeId, const Record& b, NodeId) {
    return a[0] < b[0];
  }
};

struct GatherOutput {
  std::vector<Record> table;  // id-indexed, all n records
  NodeId root = 0;
  NodeId dist = 0;            // BFS hops to the root
  int parent_port = -1;       // -1 at the root
  std::vector<NodeId> children;  // child ports in the BFS tree
};

// Phases, with T_A = n + 2:
//   rounds 1..T_A      rank wave: everyone announces the best (rank, id,
//                      dist) seen so far; re-announcing on every improvement
//                      makes this a BFS flood from the best-ranked node.
//   round T_A + 1      every non-root registers with its parent (CHILD).
//   rounds T_A + 2 ..  upcast: each node streams its subtree's records to
//                      its parent one per round, END when drained; the root
//                      assembles the table and streams it back down in
//                      ascending id order, one record per round, forwarded
//                      pipelined. A node halts once it holds all n records.
template <class RankPolicy>
struct GatherFloodProgram {
  std::vector<Record> records;  // per node: its own record (read at init only)

  struct State {
    NodeId id = 0;
    NodeId degree = 0;
    NodeId n = 0;
    Record own{};
    // rank wave
    Record best_rec{};
    NodeId best_id = 0;
    NodeId dist = 0;
    int parent = -1;
    // tree + upcast
    std::vector<NodeId> children;
    std::size_t children_end = 0;
    bool end_sent = false;
    std::vector<std::pair<NodeId, Record>> up_queue;
    std::size_t up_head = 0;
    // table
    std::vector<Record> table;
    std::vector<char> have;
    NodeId have_count = 0;
    NodeId down_next = 0;
  };
  using Output = GatherOutput;

  State init(const NodeEnv& env) const {
    State st;
    st.id = env.id;
    st.degree = env.degree;
    st.n = env.n;
    st.own = records[env.id];
    st.best_rec = st.own;
    st.best_id = env.id;
    st.table.resize(env.n);
    st.have.resize(env.n, 0);
    st.table[env.id] = st.own;
    st.have[env.id] = 1;
    st.have_count = 1;
    return st;
  }

  void on_round(State& st, RoundIo& io) const {
    const std::size_t wave_end = static_cast<std::size_t>(st.n) + 2;
    const std::size_t round = io.round();

    if (round <= wave_end) {
      bool adopted = round == 1;  // round 1: announce own rank
      for (const Msg& m : io.inbox()) {
        const Record rec{m.payload[1], m.payload[2], m.payload[3]};
        const NodeId id = static_cast<NodeId>(m.payload[4]);
        const NodeId d = static_cast<NodeId>(m.payload[5]) + 1;
        if (RankPolicy::better(rec, id, st.best_rec, st.best_id)) {
          st.best_rec = rec;
          st.best_id = id;
          st.dist = d;
          st.parent = static_cast<int>(m.port);
          adopted = true;
        } else if (id == st.best_id && d < st.dist) {
          // Same root, shorter path; cannot happen for the final root's own
          // wave (synchronous flooding arrives shortest-path first) but
          // keeps transient candidates consistent.
          st.dist = d;
          st.parent = static_cast<int>(m.port);
          adopted = true;
        }
      }
      if (adopted) {
        for (NodeId p = 0; p < st.degree; ++p) {
          io.send(p, Payload{tag::kRank, st.best_rec[0], st.best_rec[1],
                             st.best_rec[2], st.best_id, st.dist});
        }
      }
      return;
    }

    if (round == wave_end + 1) {
      if (st.parent >= 0) {
        io.send(static_cast<NodeId>(st.parent), Payload{tag::kChild});
      }
      return;
    }

    const bool is_root = st.parent < 0;
    if (round == wave_end + 2) {
      for (const Msg& m : io.inbox()) {
        if (m.payload[0] == tag::kChild) st.children.push_back(m.port);
      }
      if (!is_root) st.up_queue.emplace_back(st.id, st.own);
    } else {
      std::size_t downs = 0;
      for (const Msg& m : io.inbox()) {
        switch (m.payload[0]) {
          case tag::kUp: {
            const NodeId id = static_cast<NodeId>(m.payload[1]);
            const Record rec{m.payload[2], m.payload[3], m.payload[4]};
            if (is_root) {
              if (!st.have[id]) {
                st.have[id] = 1;
                st.table[id] = rec;
                ++st.have_count;
              }
            } else {
              st.up_queue.emplace_back(id, rec);
            }
            break;
          }
          case tag::kEnd:
            ++st.children_end;
            break;
          case tag::kDown: {
            const NodeId id = static_cast<NodeId>(m.payload[1]);
            const Record rec{m.payload[2], m.payload[3], m.payload[4]};
            if (!st.have[id]) {
              st.have[id] = 1;
              st.table[id] = rec;
              ++st.have_count;
            }
            // Forward down the tree even if the record was already known
            // (a node's own record comes back this way).
            for (const NodeId p : st.children) {
              io.send(p, Payload{tag::kDown, id, rec[0], rec[1], rec[2]});
            }
            ++downs;
            break;
          }
          default:
            break;
        }
      }
      (void)downs;
    }

    if (!is_root) {
      const NodeId parent = static_cast<NodeId>(st.parent);
      if (st.up_head < st.up_queue.size()) {
        const auto& [id, rec] = st.up_queue[st.up_head++];
        io.send(parent, Payload{tag::kUp, id, rec[0], rec[1], rec[2]});
      } else if (!st.end_sent && st.children_end == st.children.size()) {
        io.send(parent, Payload{tag::kEnd});
        st.end_sent = true;
      }
      if (st.have_count == st.n) io.halt();
    } else {
      if (st.have_count == st.n && st.down_next < st.n) {
        const NodeId id = st.down_next++;
        const Record& rec = st.table[id];
        for (const NodeId p : st.children) {
          io.send(p, Payload{tag::kDown, id, rec[0], rec[1], rec[2]});
        }
      }
      if (st.have_count == st.n && st.down_next == st.n) io.halt();
    }
  }

  Output report(const State& st) const {
    return {st.table, st.best_id, st.dist, st.parent, st.children};
  }
};

// Every node announces its own record's weight; afterwards every node holds
// the full (weight, degree) table and can compute the sweep order locally.
inline std::pair<std::vector<GatherOutput>, RoundMetrics> rho_broadcast(
    const Graph& g, std::span<const std::uint64_t> weights, const SimConfig& sim) {
  if (weights.size() != g.n()) throw ConfigError("weight vector size mismatch");
  constexpr std::uint64_t kLoMask = (1ull << 31) - 1;
  std::vector<Record> records(g.n());
  for (NodeId v = 0; v < g.n(); ++v) {
    if (weights[v] > (1ull << 62)) {
      throw ConfigError("weight exceeds the 62-bit payload convention");
    }
    records[v] = {weights[v] >> 31, weights[v] & kLoMask, g.degree(v)};
  }
  auto r = run(g, GatherFloodProgram<RhoRankPolicy>{std::move(records)}, sim);
  return {std::move(r.outputs), std::move(r.metrics)};
}

// One-shot exchange: round 1 everyone tells its neighbors its sweep
// position, round 2 everyone counts how many neighbors precede it.
struct PositionExchangeProgram {
  const SweepOrder* order = nullptr;

  struct State {
    NodeId degree = 0;
    std::size_t my_pos = 0;
    NodeId earlier = 0;
  };
  using Output = NodeId;

  State init(const NodeEnv& env) const {
    return State{env.degree, order->pos[env.id], 0};
  }

  void on_round(State& st, RoundIo& io) const {
    if (io.round() == 1) {
      for (NodeId p = 0; p < st.degree; ++p) {
        io.send(p, Payload{static_cast<std::uint64_t>(st.my_pos)});
      }
      return;
    }
    for (const Msg& m : io.inbox()) {
      if (m.payload[0] < st.my_pos) ++st.earlier;
    }
    io.halt();
  }

  Output report(const State& st) const { return st.earlier; }
};

// Rebuilds the full sweep table from a gathered (pos, L, R) record set.
// Works purely from the records, so it double-checks the recurrences the
// host-side sweep uses.
inline SweepResult sweep_from_records(const std::vector<Record>& table) {
  const NodeId n = static_cast<NodeId>(table.size());
  if (n < 2) throw ConfigError("sweep needs at least two nodes");
  std::vector<NodeId> l_of(n), r_of(n);
  std::vector<char> seen(n, 0);
  std::uint64_t two_m = 0;
  for (NodeId id = 0; id < n; ++id) {
    const std::uint64_t pos = table[id][0];
    if (pos >= n || seen[pos]) throw ContractViolation("gathered positions are not a permutation");
    seen[pos] = 1;
    l_of[pos] = static_cast<NodeId>(table[id][1]);
    r_of[pos] = static_cast<NodeId>(table[id][2]);
    two_m += table[id][1] + table[id][2];
  }
  SweepResult r;
  r.two_m = two_m;
  r.crossings.resize(n - 1);
  r.volumes.resize(n - 1);
  r.conductances.resize(n - 1);
  r.l_counts.resize(n - 1);
  r.r_counts.resize(n - 1);
  std::uint64_t crossing = 0;
  std::uint64_t volume = 0;
  r.best_denominator = 0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    crossing += r_of[k];
    crossing -= l_of[k];
    volume += l_of[k] + r_of[k];
    const std::uint64_t den = std::min(volume, two_m - volume);
    r.l_counts[k] = l_of[k];
    r.r_counts[k] = r_of[k];
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

// Distributed sweep: neighbors exchange positions (2 rounds), then the
// (pos, L, R) triples are gathered to the order head and flooded back, and
// every node rebuilds the same prefix-cut table. Throws if any replica
// disagrees with the others.
inline std::pair<SweepResult, RoundMetrics> sweep_distributed(
    const Graph& g, const SweepOrder& order, const SimConfig& sim) {
  if (order.pi.size() != g.n()) throw ConfigError("order does not cover the graph");
  auto ex = run(g, PositionExchangeProgram{&order}, sim);
  RoundMetrics metrics = std::move(ex.metrics);

  std::vector<Record> records(g.n());
  for (NodeId v = 0; v < g.n(); ++v) {
    const NodeId l = ex.outputs[v];
    records[v] = {order.pos[v], l, static_cast<std::uint64_t>(g.degree(v)) - l};
  }
  auto gf = run(g, GatherFloodProgram<PositionRankPolicy>{std::move(records)}, sim);
  metrics.absorb(gf.metrics);

  SweepResult result = sweep_from_records(gf.outputs[0].table);
  for (NodeId v = 1; v < g.n(); ++v) {
    const SweepResult other = sweep_from_records(gf.outputs[v].table);
    if (other.crossings != result.crossings || other.volumes != result.volumes ||
        other.best_j != result.best_j) {
      throw ContractViolation("sweep replicas disagree");
    }
  }
  return {std::move(result), std::move(metrics)};
}

// Floods one 3-field value from a source to every node; each node forwards
// it once on the ports it did not arrive by.
struct FloodValueProgram {
  NodeId source = 0;
  Record value{};

  struct State {
    NodeId degree = 0;
    bool is_source = false;
    bool have = false;
    Record v{};
  };
  using Output = Record;

  State init(const NodeEnv& env) const {
    return State{env.degree, env.id == source, false, {}};
  }

  void on_round(State& st, RoundIo& io) const {
    if (st.have) {
      io.halt();
      return;
    }
    if (io.round() == 1 && st.is_source) {
      st.have = true;
      st.v = value;
      for (NodeId p = 0; p < st.degree; ++p) {
        io.send(p, Payload{st.v[0], st.v[1], st.v[2]});
      }
      io.halt();
      return;
    }
    if (!io.inbox().empty()) {
      st.have = true;
      const Payload& pl = io.inbox().front().payload;
      st.v = {pl[0], pl[1], pl[2]};
      std::size_t next_arrival = 0;
      for (NodeId p = 0; p < st.degree; ++p) {
        if (next_arrival < io.inbox().size() && io.inbox()[next_arrival].port == p) {
          ++next_arrival;  // arrived on this port; no need to send back
          continue;
        }
        io.send(p, Payload{st.v[0], st.v[1], st.v[2]});
      }
      io.halt();
    }
  }

  Output report(const State& st) const { return st.v; }
};

inline std::pair<std::vector<Record>, RoundMetrics> flood_value(
    const Graph& g, NodeId source, const Record& value, const SimConfig& sim) {
  if (source >= g.n()) throw ConfigError("flood source out of range");
  auto r = run(g, FloodValueProgram{source, value}, sim);
  return {std::move(r.outputs), std::move(r.metrics)};
}

}  // namespace scut
