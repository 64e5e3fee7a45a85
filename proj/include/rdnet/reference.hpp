#pragma once

#include <vector>

#include "rdnet/graph.hpp"
#include "rdnet/kcore.hpp"

// Serial reference implementations, deliberately naive and independent of
// the optimized kernels. They recompute everything from scratch on dense
// structures and exist for correctness testing and as the baseline side of
// the benchmark. Do not use them on large graphs.
namespace rdnet::reference {

// Stage-wise pruner that rescans every surviving node and recomputes all
// degrees from scratch after each deletion wave.
ShellAssignment kcore_pruner(const GraphSnapshot& g, KcoreMode mode,
                             WeightedDegreeParams params = {});

// Exhaustive path counting: Floyd-Warshall distances, then a
// sigma(s,t) / sigma(s,t | v) tally over all node triples.
std::vector<double> betweenness_norm(const GraphSnapshot& g);

// Direct evaluation of the formulas on an adjacency matrix.
std::vector<double> local_clustering(const GraphSnapshot& g);
std::vector<double> local_reach(const GraphSnapshot& g);
std::vector<double> local_efficiency(const GraphSnapshot& g,
                                     bool normalized = false);

// Dense truncated power series for Katz scores.
std::vector<double> katz_bonacich(const GraphSnapshot& g, double damping,
                                  int terms = 200);

// Plain serial loop over observations for the zero-inflated negative
// binomial log-likelihood (mean mu_i, dispersion theta, mixing pi_i).
double zinb_loglik_serial(const std::vector<double>& mu,
                          const std::vector<double>& pi, double theta,
                          const std::vector<long long>& y);

}  // namespace rdnet::reference
