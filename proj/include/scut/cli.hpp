#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scut/generators.hpp"
#include "scut/graph.hpp"
#include "scut/oracle.hpp"
#include "scut/report.hpp"
#include "scut/sparse_cut.hpp"

namespace scut {

// Command-line front end. Exit codes: 0 success, 2 configuration or usage
// error, 3 runtime failure (round cap exceeded, bit-budget violation, or an
// internal contract breach).

namespace cli_detail {

struct GraphArgs {
  std::string path;
  std::string family;
  std::uint32_t n = 0;
  double p = 0.1;
  std::uint64_t gen_seed = 1;
};

inline void add_graph_options(CLI::App* cmd, GraphArgs& ga) {
  cmd->add_option("--graph", ga.path, "edge-list file (one 'u v' pair per line)");
  cmd->add_option("--family", ga.family,
                  "generated family: barbell, cycle, complete, random");
  cmd->add_option("--n", ga.n, "node count for --family");
  cmd->add_option("--p", ga.p, "extra-edge probability for --family random");
  cmd->add_option("--gen-seed", ga.gen_seed, "seed for --family random");
}

// Connectivity is validated by Graph construction itself, for files and
// generated families alike.
inline Graph resolve_graph(const GraphArgs& ga) {
  if (!ga.path.empty() && !ga.family.empty()) {
    throw ConfigError("give either --graph or --family, not both");
  }
  if (!ga.path.empty()) {
    std::ifstream in(ga.path);
    if (!in) throw ConfigError("cannot open graph file: " + ga.path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_edge_list(buf.str());
  }
  if (ga.family.empty()) {
    throw ConfigError("a graph is required: --graph PATH or --family NAME --n N");
  }
  if (ga.n == 0) throw ConfigError("--family needs --n");
  return generate({family_from_string(ga.family), ga.n, ga.p, ga.gen_seed});
}

inline WalkMode mode_from_string(const std::string& s) {
  if (s == "tokens") return WalkMode::tokens;
  if (s == "diffusion") return WalkMode::diffusion;
  throw ConfigError("unknown mode: " + s + " (expected tokens or diffusion)");
}

inline CutEngine engine_from_string(const std::string& s) {
  if (s == "randomwalk") return CutEngine::randomwalk;
  if (s == "pagerank") return CutEngine::pagerank;
  throw ConfigError("unknown engine: " + s + " (expected randomwalk or pagerank)");
}

inline void emit(const std::string& text, const std::string& out_path,
                 std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw ConfigError("cannot write to " + out_path);
  f << text;
}

inline std::vector<std::uint32_t> parse_sizes(const std::string& csv) {
  std::vector<std::uint32_t> sizes;
  std::string item;
  std::istringstream in(csv);
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("bad size: " + item);
    }
    if (used != item.size() || v == 0 || v > 0xffffffffull) {
      throw ConfigError("bad size: " + item);
    }
    sizes.push_back(static_cast<std::uint32_t>(v));
  }
  return sizes;
}

}  // namespace cli_detail

inline int run_cli(std::vector<std::string> args, std::ostream& out,
                   std::ostream& err) {
  using namespace cli_detail;

  CLI::App app{"distributed sparse-cut toolkit"};
  app.require_subcommand(1);

  // --- generate ---------------------------------------------------------
  GraphArgs gen_ga;
  std::string gen_out;
  CLI::App* gen = app.add_subcommand("generate", "emit a family graph as an edge list");
  add_graph_options(gen, gen_ga);
  gen->add_option("--out", gen_out, "output path (default: stdout)");

  // --- run --------------------------------------------------------------
  GraphArgs run_ga;
  std::string algo = "randomwalk";
  std::string mode_s = "tokens";
  std::string engine_s = "randomwalk";
  double phi = 0.1, balance_b = 0.25, epsilon = 0.0;
  std::uint64_t walks = 0, seed = 0, max_rounds = 1ull << 20;
  std::int64_t source = -1;
  std::uint32_t c1 = 4;
  bool strict_bits = true;
  std::string run_out;
  CLI::App* run = app.add_subcommand("run", "search for a sparse cut");
  add_graph_options(run, run_ga);
  run->add_option("--algo", algo, "randomwalk | pagerank | local | guess");
  run->add_option("--phi", phi, "target conductance (randomwalk/pagerank)");
  run->add_option("--balance", balance_b, "assumed balance b in (0, 1/2]");
  run->add_option("--epsilon", epsilon, "estimation accuracy (0: phi^2/4)");
  run->add_option("--walks", walks, "token count K (0: accuracy default)");
  run->add_option("--mode", mode_s, "tokens | diffusion");
  run->add_option("--engine", engine_s, "engine for local/guess: randomwalk | pagerank");
  run->add_option("--source", source, "cluster source node (local only)");
  run->add_option("--seed", seed, "simulation seed");
  run->add_option("--max-rounds", max_rounds, "round cap per simulation");
  run->add_option("--c1", c1, "walk-length cap multiplier");
  run->add_flag("--strict-bits,!--no-strict-bits", strict_bits,
                "abort on any per-message bit-budget violation (default: on)");
  run->add_option("--out", run_out, "output path (default: stdout)");

  // --- oracle -----------------------------------------------------------
  GraphArgs ora_ga;
  std::string kind = "cut";
  std::uint32_t ora_source = 0;
  std::uint64_t ora_length = 1;
  double ora_alpha = 0.2;
  std::string ora_out;
  CLI::App* ora = app.add_subcommand(
      "oracle", "exact reference values computed centrally (no simulation)");
  add_graph_options(ora, ora_ga);
  ora->add_option("--kind", kind, "walk | pagerank | cut");
  ora->add_option("--source", ora_source, "start node (walk/pagerank)");
  ora->add_option("--length", ora_length, "walk length (walk)");
  ora->add_option("--alpha", ora_alpha, "reset probability (pagerank)");
  ora->add_option("--out", ora_out, "output path (default: stdout)");

  // --- bench ------------------------------------------------------------
  std::string bench_family = "barbell";
  std::string sizes_csv;
  std::string bench_mode = "diffusion";
  std::uint64_t bench_seed = 0, bench_walks = 0;
  double bench_balance = 0.25;
  CLI::App* bench = app.add_subcommand(
      "bench", "guess-loop table over family sizes: n, phi*, phi, rounds, messages");
  bench->add_option("--family", bench_family, "graph family");
  bench->add_option("--sizes", sizes_csv, "comma-separated node counts");
  bench->add_option("--mode", bench_mode, "tokens | diffusion");
  bench->add_option("--balance", bench_balance, "assumed balance b");
  bench->add_option("--walks", bench_walks, "token count K (0: accuracy default)");
  bench->add_option("--seed", bench_seed, "simulation seed");

  try {
    std::vector<const char*> argv;
    argv.push_back("scut");
    for (const std::string& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      Graph g = resolve_graph(gen_ga);
      emit(serialize_edge_list(g), gen_out, out);
      return 0;
    }

    if (run->parsed()) {
      Graph g = resolve_graph(run_ga);
      SparseCutConfig cfg;
      cfg.phi = phi;
      cfg.balance = balance_b;
      cfg.epsilon = epsilon;
      cfg.c1 = c1;
      cfg.walks = walks;
      cfg.mode = mode_from_string(mode_s);
      cfg.engine = engine_from_string(engine_s);
      SimConfig sim;
      sim.seed = seed;
      sim.max_rounds = max_rounds;
      sim.strict_bits = strict_bits;

      CutReport r;
      if (algo == "randomwalk") {
        r = sparse_cut_randomwalk(g, cfg, sim);
      } else if (algo == "pagerank") {
        r = sparse_cut_pagerank(g, cfg, sim);
      } else if (algo == "guess") {
        r = guess_phi(g, balance_b, cfg, sim);
      } else if (algo == "local") {
        if (source < 0) throw ConfigError("--algo local needs --source");
        if (source >= static_cast<std::int64_t>(g.n())) {
          throw ConfigError("--source out of range");
        }
        r = local_cluster(g, static_cast<NodeId>(source), cfg, sim);
      } else {
        throw ConfigError("unknown algo: " + algo +
                          " (expected randomwalk, pagerank, local, or guess)");
      }
      emit(cut_report_to_json(g, r).dump(2) + "\n", run_out, out);
      return 0;
    }

    if (ora->parsed()) {
      Graph g = resolve_graph(ora_ga);
      Json j;
      if (kind == "walk") {
        if (ora_source >= g.n()) throw ConfigError("--source out of range");
        j = oracle_distribution_to_json(
            g, exact_walk_distribution(g, ora_source, ora_length), "walk");
        j["source"] = g.external_ids()[ora_source];
        j["length"] = ora_length;
      } else if (kind == "pagerank") {
        if (ora_source >= g.n()) throw ConfigError("--source out of range");
        j = oracle_distribution_to_json(g, exact_ppr(g, ora_source, ora_alpha),
                                        "pagerank");
        j["source"] = g.external_ids()[ora_source];
        j["alpha"] = format_double(ora_alpha);
      } else if (kind == "cut") {
        j = oracle_cut_to_json(g, brute_force_sparsest_cut(g));
      } else {
        throw ConfigError("unknown oracle kind: " + kind +
                          " (expected walk, pagerank, or cut)");
      }
      emit(j.dump(2) + "\n", ora_out, out);
      return 0;
    }

    if (bench->parsed()) {
      const std::vector<std::uint32_t> sizes = parse_sizes(sizes_csv);
      const GraphFamily family = family_from_string(bench_family);
      out << "n phi_star phi rounds messages\n";
      for (std::uint32_t n : sizes) {
        out << n << ' ';
        try {
          Graph g = generate({family, n, 0.1, 1});
          std::string phi_star = "-";
          if (family == GraphFamily::barbell) {
            const std::uint64_t k = (n - 1) / 2;
            phi_star = "1/" + std::to_string(k * k - k + 1);
          } else if (n <= OracleBudget{}.max_n_bruteforce) {
            phi_star = to_string(brute_force_sparsest_cut(g).phi_exact);
          }
          SparseCutConfig cfg;
          cfg.balance = bench_balance;
          cfg.walks = bench_walks;
          cfg.mode = mode_from_string(bench_mode);
          SimConfig sim;
          sim.seed = bench_seed;
          CutReport r = guess_phi(g, bench_balance, cfg, sim);
          out << phi_star << ' '
              << to_string(conductance_exact(g, r.cut)) << ' '
              << r.metrics.rounds << ' ' << r.metrics.messages_total << '\n';
        } catch (const std::exception& e) {
          out << "error error error " << e.what() << '\n';
        }
      }
      return 0;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const SimTimeout& e) {
    err << "runtime failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "runtime failure: " << e.what() << '\n';
    return 3;
  }
  return 2;
}

}  // namespace scut
