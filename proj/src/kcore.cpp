#include "rdnet/kcore.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace rdnet {

double weighted_degree_value(long long deg, long long strength, double alpha,
                             double beta) {
  if (deg <= 0) return 0.0;
  if (alpha == beta)
    return std::sqrt(static_cast<double>(deg) * static_cast<double>(strength));
  return std::pow(std::pow(static_cast<double>(deg), alpha) *
                      std::pow(static_cast<double>(strength), beta),
                  1.0 / (alpha + beta));
}

double weighted_degree(const GraphSnapshot& g, int node, double alpha,
                       double beta) {
  if (alpha < 0 || beta < 0 || alpha + beta <= 0)
    throw std::invalid_argument("weighted degree requires alpha, beta >= 0 "
                                "and alpha + beta > 0");
  return weighted_degree_value(g.degree(node), g.strength(node), alpha, beta);
}

int ShellAssignment::max_coreness() const {
  int c = 0;
  for (int k : k_s) c = std::max(c, k_s_max - k);
  return c;
}

std::vector<int> ShellAssignment::coreness_all() const {
  std::vector<int> c(k_s.size());
  for (std::size_t i = 0; i < k_s.size(); ++i) c[i] = k_s_max - k_s[i];
  return c;
}

namespace {

// Batagelj-Zaversnik bucket decomposition; O(n + m).
void decompose_unweighted(const GraphSnapshot& g, ShellAssignment& out) {
  const int n = g.n;
  std::vector<int> deg(n);
  int max_deg = 0;
  for (int v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    max_deg = std::max(max_deg, deg[v]);
  }
  // Counting sort of vertices by degree.
  std::vector<int> bin(max_deg + 2, 0);
  for (int v = 0; v < n; ++v) ++bin[deg[v]];
  int start = 0;
  for (int d = 0; d <= max_deg; ++d) {
    int count = bin[d];
    bin[d] = start;
    start += count;
  }
  std::vector<int> order(n), pos(n);
  for (int v = 0; v < n; ++v) {
    pos[v] = bin[deg[v]];
    order[pos[v]] = v;
    ++bin[deg[v]];
  }
  for (int d = max_deg; d >= 1; --d) bin[d] = bin[d - 1];
  bin[0] = 0;

  for (int i = 0; i < n; ++i) {
    int v = order[i];
    out.k_s[v] = deg[v];
    for (int u : g.neigh(v)) {
      if (deg[u] > deg[v]) {
        int du = deg[u];
        int pu = pos[u];
        int pw = bin[du];
        int w = order[pw];
        if (u != w) {
          std::swap(order[pu], order[pw]);
          pos[u] = pw;
          pos[w] = pu;
        }
        ++bin[du];
        --deg[u];
      }
    }
  }
}

// Stage-wise pruning on the real-valued weighted degree. d' only decreases
// as neighbors are removed, so a lazy min-heap with stale-entry skipping is
// sound.
void decompose_weighted(const GraphSnapshot& g, WeightedDegreeParams p,
                        ShellAssignment& out) {
  const int n = g.n;
  std::vector<long long> deg(n), strength(n);
  std::vector<char> alive(n, 1);
  std::vector<double> dprime(n);
  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;

  int n_alive = 0;
  for (int v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    strength[v] = g.strength(v);
    if (deg[v] == 0) {
      alive[v] = 0;  // isolated nodes sit in shell 0
      out.k_s[v] = 0;
      continue;
    }
    dprime[v] = weighted_degree_value(deg[v], strength[v], p.alpha, p.beta);
    heap.emplace(dprime[v], v);
    ++n_alive;
  }

  int k = 0;
  int k_s_max = 0;
  while (n_alive > 0) {
    // Jump to the first stage that removes anything: smallest k with
    // min d' < k + 1.
    double min_d = heap.empty() ? 0.0 : heap.top().first;
    while (!heap.empty() && !alive[heap.top().second]) {
      heap.pop();
      min_d = heap.empty() ? 0.0 : heap.top().first;
    }
    // Stale entries carry old (larger) d'; the true minimum is <= top key,
    // so also consult the stored dprime of the top node.
    if (!heap.empty()) min_d = std::min(min_d, dprime[heap.top().second]);
    int next_k = std::max(k + 1, static_cast<int>(std::floor(min_d)));
    k = next_k;

    // Cascade deletions at threshold k + 1 (strict d' < k+1).
    bool removed_any = false;
    while (!heap.empty()) {
      auto [key, v] = heap.top();
      if (!alive[v]) {
        heap.pop();
        continue;
      }
      if (dprime[v] < key) {
        // Stale: refresh with the current value.
        heap.pop();
        heap.emplace(dprime[v], v);
        continue;
      }
      if (!(dprime[v] < static_cast<double>(k + 1))) break;
      heap.pop();
      alive[v] = 0;
      --n_alive;
      out.k_s[v] = k;
      removed_any = true;
      auto nb = g.neigh(v);
      auto wt = g.neigh_weights(v);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        int u = nb[i];
        if (!alive[u]) continue;
        --deg[u];
        strength[u] -= wt[i];
        double nd = weighted_degree_value(deg[u], strength[u], p.alpha, p.beta);
        dprime[u] = nd;
        heap.emplace(nd, u);
      }
    }
    if (removed_any) k_s_max = k;
  }
  out.k_s_max = k_s_max;
}

}  // namespace

ShellAssignment kcore_decompose(const GraphSnapshot& g, KcoreMode mode,
                                WeightedDegreeParams params) {
  if (mode == KcoreMode::Weighted &&
      (params.alpha < 0 || params.beta < 0 || params.alpha + params.beta <= 0))
    throw std::invalid_argument("weighted k-core requires alpha, beta >= 0 "
                                "and alpha + beta > 0");
  ShellAssignment out;
  out.mode = mode;
  out.params = params;
  out.k_s.assign(g.n, 0);
  if (g.n == 0) return out;

  if (mode == KcoreMode::Unweighted) {
    decompose_unweighted(g, out);
    out.k_s_max = *std::max_element(out.k_s.begin(), out.k_s.end());
  } else {
    decompose_weighted(g, params, out);
  }
  return out;
}

std::vector<long long> coreness_distribution(const ShellAssignment& a) {
  std::vector<long long> hist(a.max_coreness() + 1, 0);
  if (a.k_s.empty()) return hist;
  for (int k : a.k_s) ++hist[a.k_s_max - k];
  return hist;
}

double relative_coreness(int coreness_i, int coreness_max) {
  if (coreness_max < 0) throw std::invalid_argument("C_max must be >= 0");
  if (coreness_max == 0) return 0.0;
  return static_cast<double>(coreness_i) / static_cast<double>(coreness_max);
}

std::vector<double> katz_bonacich(const GraphSnapshot& g,
                                  const KatzOptions& opts) {
  if (opts.damping <= 0.0)
    throw std::invalid_argument("Katz damping must be positive");
  const int n = g.n;
  std::vector<double> score(n, 0.0), walk(n, 1.0), next(n, 0.0);
  double residual = 0.0;
  for (int it = 0; it < opts.max_iter; ++it) {
    // next = damping * W * walk
#pragma omp parallel for schedule(static)
    for (int v = 0; v < n; ++v) {
      auto nb = g.neigh(v);
      auto wt = g.neigh_weights(v);
      double acc = 0.0;
      for (std::size_t i = 0; i < nb.size(); ++i)
        acc += static_cast<double>(wt[i]) * walk[nb[i]];
      next[v] = opts.damping * acc;
    }
    residual = 0.0;
    for (int v = 0; v < n; ++v) {
      score[v] += next[v];
      residual = std::max(residual, std::abs(next[v]));
    }
    walk.swap(next);
    if (residual < opts.tol) return score;
    if (!std::isfinite(residual)) break;
  }
  throw KatzNonConvergence(residual);
}

}  // namespace rdnet
