#pragma once

#include <stdexcept>
#include <vector>

#include "rdnet/graph.hpp"

namespace rdnet {

enum class KcoreMode { Unweighted, Weighted };

struct WeightedDegreeParams {
  double alpha = 1.0;
  double beta = 1.0;
};

// Geometric-mean combination of degree and total incident weight,
// (d^alpha * strength^beta)^(1/(alpha+beta)). Isolated nodes get 0.
// With alpha == beta this is evaluated as sqrt(d * strength), which is
// exact for unit weights (then d' == d).
double weighted_degree_value(long long deg, long long strength, double alpha,
                             double beta);
double weighted_degree(const GraphSnapshot& g, int node, double alpha,
                       double beta);

struct ShellAssignment {
  std::vector<int> k_s;  // per dense node; isolated nodes carry 0
  int k_s_max = 0;
  KcoreMode mode = KcoreMode::Unweighted;
  WeightedDegreeParams params;

  int coreness(int v) const { return k_s_max - k_s[v]; }
  int max_coreness() const;
  std::vector<int> coreness_all() const;
};

// Iterative pruning: stage k = 1, 2, ... repeatedly deletes every surviving
// node whose (weighted) degree, recomputed after each deletion wave, falls
// below the next integer threshold; nodes deleted in stage k get shell
// index k. Unweighted mode uses the linear-time bucket algorithm; weighted
// mode uses a lazy min-priority queue over the real-valued d'.
ShellAssignment kcore_decompose(const GraphSnapshot& g, KcoreMode mode,
                                WeightedDegreeParams params = {});

// Counts per coreness value C = 0..max observed C; sums to n.
std::vector<long long> coreness_distribution(const ShellAssignment& a);

// C_i / C_max in [0, 1]; defined as 0 when C_max == 0 (single-shell graph).
double relative_coreness(int coreness_i, int coreness_max);

struct KatzOptions {
  double damping = 0.1;
  double tol = 1e-10;
  int max_iter = 2000;
};

struct KatzNonConvergence : std::runtime_error {
  double residual;
  explicit KatzNonConvergence(double r)
      : std::runtime_error("Katz iteration did not converge, residual " +
                           std::to_string(r)),
        residual(r) {}
};

// Katz-Bonacich scores: sum over path lengths k >= 1 of damping^k times the
// weighted walk count. Requires damping below 1/spectral-radius; throws
// KatzNonConvergence carrying the residual when the cap is hit.
std::vector<double> katz_bonacich(const GraphSnapshot& g,
                                  const KatzOptions& opts);

}  // namespace rdnet
