#pragma once

#include <vector>

#include "rdnet/graph.hpp"

namespace rdnet {

enum class BetweennessCosts {
  Hops,           // unweighted shortest paths (default)
  InverseWeight,  // edge cost 1/w, for sensitivity checks
};

struct CentralityVectors {
  std::vector<int> degree;
  std::vector<double> betweenness_norm;
  std::vector<double> local_clustering;
  std::vector<double> local_reach;
  std::vector<double> local_efficiency;
};

// Distinct-partner count (weights ignored).
std::vector<int> degree(const GraphSnapshot& g);

// Shortest-path betweenness, endpoints excluded, normalized by
// 2/((n-1)(n-2)); all zeros for n < 3. Parallel over source blocks with a
// fixed merge order, so results do not depend on the thread count.
std::vector<double> betweenness_norm(const GraphSnapshot& g,
                                     BetweennessCosts costs =
                                         BetweennessCosts::Hops);

// 2 e_i / (d_i (d_i - 1)); 0 when d_i < 2.
std::vector<double> local_clustering(const GraphSnapshot& g);

// Harmonic sum of inverse hop distances to all other nodes; unreachable
// nodes contribute 0.
std::vector<double> local_reach(const GraphSnapshot& g);

// Effective size of the neighborhood: for each neighbor j of i, adds
// 1 - sum_k p_ik * delta_jk over neighbors k != j, with p_ik the
// proportional tie strength w_ik / strength(i). `normalized` divides by
// the degree.
std::vector<double> local_efficiency(const GraphSnapshot& g,
                                     bool normalized = false);

CentralityVectors compute_all(const GraphSnapshot& g);

}  // namespace rdnet
