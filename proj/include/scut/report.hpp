#pragma once

#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "scut/congest.hpp"
#include "scut/graph.hpp"
#include "scut/oracle.hpp"
#include "scut/pagerank.hpp"
#include "scut/rational.hpp"
#include "scut/sparse_cut.hpp"
#include "scut/sweep.hpp"
#include "scut/walk.hpp"

namespace scut {

// Serialization of results. All exports are deterministic: key order is
// fixed, node ids are the external ids from the input file, floating-point
// values go through one printf format, and nothing records wall-clock time.

using Json = nlohmann::ordered_json;

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline Json metrics_to_json(const RoundMetrics& m) {
  Json j;
  j["rounds"] = m.rounds;
  j["messages_total"] = m.messages_total;
  j["max_bits_per_edge_round"] = m.max_bits_per_edge_round;
  j["budget_violations"] = m.budget_violations;
  return j;
}

inline Json cut_to_json(const Graph& g, const Cut& cut) {
  Json j;
  std::vector<std::uint64_t> members;
  members.reserve(cut.members.size());
  for (NodeId v : cut.members) members.push_back(g.external_ids()[v]);
  j["members"] = members;
  j["crossing"] = cut.crossing;
  j["volume"] = cut.vol_s;
  j["conductance"] = format_double(conductance(g, cut));
  j["conductance_exact"] = to_string(conductance_exact(g, cut));
  j["balance"] = format_double(balance(g, cut));
  return j;
}

inline Json cut_report_to_json(const Graph& g, const CutReport& r) {
  Json j;
  j["algorithm"] = r.algorithm;
  j["n"] = g.n();
  j["m"] = g.m();
  j["phi_guess"] = format_double(r.phi_guess);
  j["accepted"] = r.accepted;
  j["cut"] = cut_to_json(g, r.cut);
  j["source"] = g.external_ids()[r.source_used];
  j["length"] = r.length_used;
  j["alpha"] = format_double(r.alpha_used);
  j["metrics"] = metrics_to_json(r.metrics);
  Json trace = Json::array();
  for (const CandidateTrace& t : r.trace) {
    Json row;
    row["source"] = g.external_ids()[t.source];
    row["length"] = t.length;
    row["alpha"] = format_double(t.alpha);
    row["best_j"] = t.best_j;
    row["best_conductance"] = format_double(t.best_conductance);
    trace.push_back(std::move(row));
  }
  j["trace"] = std::move(trace);
  return j;
}

inline Json estimate_to_json(const Graph& g, const ProbEstimate& e) {
  Json j;
  j["kind"] = "walk";
  j["walks"] = e.walks;
  j["length"] = e.length;
  j["weight_total"] = e.weight_total;
  Json rows = Json::array();
  for (NodeId v = 0; v < g.n(); ++v) {
    Json row;
    row["node"] = g.external_ids()[v];
    row["value"] = format_double(e.values[v]);
    row["weight"] = e.weights[v];
    rows.push_back(std::move(row));
  }
  j["nodes"] = std::move(rows);
  return j;
}

inline Json estimate_to_json(const Graph& g, const PageRankEstimate& e) {
  Json j;
  j["kind"] = "pagerank";
  j["walks"] = e.walks;
  j["alpha"] = format_double(e.alpha);
  j["moves_total"] = e.moves_total;
  j["rounds_used"] = e.rounds_used;
  Json rows = Json::array();
  for (NodeId v = 0; v < g.n(); ++v) {
    Json row;
    row["node"] = g.external_ids()[v];
    row["value"] = format_double(e.values[v]);
    row["visits"] = e.visits[v];
    rows.push_back(std::move(row));
  }
  j["nodes"] = std::move(rows);
  return j;
}

// Exact reference values computed centrally (no simulation) are flagged so
// downstream tooling can never mistake them for protocol output.
inline Json oracle_distribution_to_json(const Graph& g,
                                        const std::vector<double>& dist,
                                        const std::string& kind) {
  Json j;
  j["oracle"] = true;
  j["kind"] = kind;
  Json rows = Json::array();
  for (NodeId v = 0; v < g.n(); ++v) {
    Json row;
    row["node"] = g.external_ids()[v];
    row["value"] = format_double(dist[v]);
    rows.push_back(std::move(row));
  }
  j["nodes"] = std::move(rows);
  return j;
}

inline Json oracle_cut_to_json(const Graph& g, const BruteForceResult& r) {
  Json j;
  j["oracle"] = true;
  j["kind"] = "sparsest-cut";
  j["cut"] = cut_to_json(g, r.cut);
  j["conductance_exact"] = to_string(r.phi_exact);
  return j;
}

inline Json sweep_to_json(const Graph& g, const SweepOrder& order,
                          const SweepResult& s) {
  Json j;
  j["best_j"] = s.best_j;
  j["best_conductance"] = format_double(s.best_conductance);
  Json rows = Json::array();
  for (std::size_t k = 0; k + 1 < g.n(); ++k) {
    Json row;
    row["j"] = k + 1;
    row["node"] = g.external_ids()[order.pi[k]];
    row["l"] = s.l_counts[k];
    row["r"] = s.r_counts[k];
    row["crossing"] = s.crossings[k];
    row["volume"] = s.volumes[k];
    row["conductance"] = format_double(s.conductances[k]);
    rows.push_back(std::move(row));
  }
  j["prefixes"] = std::move(rows);
  return j;
}

// Plain-text exports: one record per line, space separated.

inline std::string distribution_text(const Graph& g,
                                     std::span<const double> values) {
  std::string out;
  for (NodeId v = 0; v < g.n(); ++v) {
    out += std::to_string(g.external_ids()[v]);
    out += ' ';
    out += format_double(values[v]);
    out += '\n';
  }
  return out;
}

inline std::string trace_text(const RoundMetrics& m) {
  std::string out;
  for (const TraceEntry& t : m.trace) {
    out += std::to_string(t.round);
    out += ' ';
    out += std::to_string(t.src);
    out += ' ';
    out += std::to_string(t.dst);
    out += ' ';
    out += std::to_string(t.bits);
    out += '\n';
  }
  return out;
}

}  // namespace scut
