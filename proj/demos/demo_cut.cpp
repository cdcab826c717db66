// Find the bottleneck of a barbell graph with the conductance-guessing
// loop and print the full JSON report.

#include <iostream>

#include "scut/scut.hpp"

int main() {
  using namespace scut;

  const Graph g = make_barbell(11);  // two 5-cliques joined through a middle node

  SparseCutConfig cfg;
  cfg.mode = WalkMode::diffusion;

  SimConfig sim;
  sim.seed = 7;

  const CutReport report = guess_phi(g, /*balance=*/5.0 / 11.0, cfg, sim);
  std::cout << cut_report_to_json(g, report).dump(2) << '\n';

  const BruteForceResult best = brute_force_sparsest_cut(g);
  std::cout << "\nexact optimum (centralized check): "
            << to_string(best.phi_exact) << '\n';
  return 0;
}
