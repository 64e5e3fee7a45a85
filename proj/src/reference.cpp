#include "rdnet/reference.hpp"

#include <algorithm>
#include <cmath>

namespace rdnet::reference {

namespace {

std::vector<std::vector<long long>> weight_matrix(const GraphSnapshot& g) {
  std::vector<std::vector<long long>> w(g.n, std::vector<long long>(g.n, 0));
  for (int v = 0; v < g.n; ++v) {
    auto nb = g.neigh(v);
    auto wt = g.neigh_weights(v);
    for (std::size_t i = 0; i < nb.size(); ++i) w[v][nb[i]] = wt[i];
  }
  return w;
}

}  // namespace

ShellAssignment kcore_pruner(const GraphSnapshot& g, KcoreMode mode,
                             WeightedDegreeParams params) {
  const int n = g.n;
  ShellAssignment out;
  out.mode = mode;
  out.params = params;
  out.k_s.assign(n, 0);
  if (n == 0) return out;

  auto w = weight_matrix(g);
  std::vector<char> alive(n, 1);

  auto measure = [&](int v) {
    long long deg = 0, strength = 0;
    for (int u = 0; u < n; ++u) {
      if (u == v || !alive[u] || w[v][u] == 0) continue;
      ++deg;
      strength += w[v][u];
    }
    if (mode == KcoreMode::Unweighted) return static_cast<double>(deg);
    return weighted_degree_value(deg, strength, params.alpha, params.beta);
  };

  int n_alive = 0;
  for (int v = 0; v < n; ++v) {
    if (measure(v) == 0.0) {
      alive[v] = 0;
      out.k_s[v] = 0;
    } else {
      ++n_alive;
    }
  }

  int k_s_max = 0;
  for (int k = 1; n_alive > 0; ++k) {
    bool removed_any = false;
    for (;;) {
      std::vector<int> doomed;
      for (int v = 0; v < n; ++v)
        if (alive[v] && measure(v) < static_cast<double>(k + 1))
          doomed.push_back(v);
      if (doomed.empty()) break;
      for (int v : doomed) {
        alive[v] = 0;
        out.k_s[v] = k;
        --n_alive;
      }
      removed_any = true;
    }
    if (removed_any) k_s_max = k;
  }
  out.k_s_max = k_s_max;
  return out;
}

std::vector<double> betweenness_norm(const GraphSnapshot& g) {
  const int n = g.n;
  std::vector<double> cb(n, 0.0);
  if (n < 3) return cb;

  // All-pairs distances by Floyd-Warshall.
  const long long INF = 1LL << 40;
  std::vector<std::vector<long long>> dist(n, std::vector<long long>(n, INF));
  for (int v = 0; v < n; ++v) dist[v][v] = 0;
  for (int v = 0; v < n; ++v)
    for (int u : g.neigh(v)) dist[v][u] = 1;
  for (int m = 0; m < n; ++m)
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t)
        dist[s][t] = std::min(dist[s][t], dist[s][m] + dist[m][t]);

  // Shortest-path counts by dynamic programming in distance order.
  std::vector<std::vector<double>> sigma(n, std::vector<double>(n, 0.0));
  for (int s = 0; s < n; ++s) {
    sigma[s][s] = 1.0;
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return dist[s][a] < dist[s][b]; });
    for (int t : order) {
      if (t == s || dist[s][t] >= INF) continue;
      double paths = 0.0;
      for (int p : g.neigh(t))
        if (dist[s][p] + 1 == dist[s][t]) paths += sigma[s][p];
      sigma[s][t] = paths;
    }
  }

  for (int v = 0; v < n; ++v) {
    double acc = 0.0;
    for (int s = 0; s < n; ++s) {
      if (s == v) continue;
      for (int t = s + 1; t < n; ++t) {
        if (t == v || dist[s][t] >= INF || sigma[s][t] == 0.0) continue;
        if (dist[s][v] + dist[v][t] == dist[s][t])
          acc += sigma[s][v] * sigma[v][t] / sigma[s][t];
      }
    }
    cb[v] = acc * 2.0 /
            (static_cast<double>(n - 1) * static_cast<double>(n - 2));
  }
  return cb;
}

std::vector<double> local_clustering(const GraphSnapshot& g) {
  const int n = g.n;
  auto w = weight_matrix(g);
  std::vector<double> c(n, 0.0);
  for (int v = 0; v < n; ++v) {
    std::vector<int> nb;
    for (int u = 0; u < n; ++u)
      if (w[v][u] > 0) nb.push_back(u);
    const int d = static_cast<int>(nb.size());
    if (d < 2) continue;
    long long e = 0;
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j)
        if (w[nb[i]][nb[j]] > 0) ++e;
    c[v] = 2.0 * static_cast<double>(e) /
           (static_cast<double>(d) * static_cast<double>(d - 1));
  }
  return c;
}

std::vector<double> local_reach(const GraphSnapshot& g) {
  const int n = g.n;
  const long long INF = 1LL << 40;
  std::vector<double> reach(n, 0.0);
  std::vector<std::vector<long long>> dist(n, std::vector<long long>(n, INF));
  for (int v = 0; v < n; ++v) dist[v][v] = 0;
  for (int v = 0; v < n; ++v)
    for (int u : g.neigh(v)) dist[v][u] = 1;
  for (int m = 0; m < n; ++m)
    for (int s = 0; s < n; ++s)
      for (int t = 0; t < n; ++t)
        dist[s][t] = std::min(dist[s][t], dist[s][m] + dist[m][t]);
  for (int s = 0; s < n; ++s) {
    double acc = 0.0;
    for (int t = 0; t < n; ++t)
      if (t != s && dist[s][t] < INF) acc += 1.0 / static_cast<double>(dist[s][t]);
    reach[s] = acc;
  }
  return reach;
}

std::vector<double> local_efficiency(const GraphSnapshot& g, bool normalized) {
  const int n = g.n;
  auto w = weight_matrix(g);
  std::vector<double> eff(n, 0.0);
  for (int i = 0; i < n; ++i) {
    std::vector<int> nb;
    double strength = 0.0;
    for (int u = 0; u < n; ++u)
      if (w[i][u] > 0) {
        nb.push_back(u);
        strength += static_cast<double>(w[i][u]);
      }
    if (nb.empty()) continue;
    double total = 0.0;
    for (int j : nb) {
      double redundancy = 0.0;
      for (int k : nb) {
        if (k == j) continue;
        double p_ik = static_cast<double>(w[i][k]) / strength;
        double delta_jk = w[j][k] > 0 ? 1.0 : 0.0;
        redundancy += p_ik * delta_jk;
      }
      total += 1.0 - redundancy;
    }
    eff[i] = normalized ? total / static_cast<double>(nb.size()) : total;
  }
  return eff;
}

std::vector<double> katz_bonacich(const GraphSnapshot& g, double damping,
                                  int terms) {
  const int n = g.n;
  auto w = weight_matrix(g);
  std::vector<double> score(n, 0.0), walk(n, 1.0), next(n, 0.0);
  for (int k = 1; k <= terms; ++k) {
    for (int v = 0; v < n; ++v) {
      double acc = 0.0;
      for (int u = 0; u < n; ++u) acc += static_cast<double>(w[v][u]) * walk[u];
      next[v] = damping * acc;
    }
    for (int v = 0; v < n; ++v) score[v] += next[v];
    walk = next;
  }
  return score;
}

double zinb_loglik_serial(const std::vector<double>& mu,
                          const std::vector<double>& pi, double theta,
                          const std::vector<long long>& y) {
  double total = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double m = mu[i];
    const double p = pi[i];
    const double nb_log0 = theta * (std::log(theta) - std::log(theta + m));
    if (y[i] == 0) {
      total += std::log(p + (1.0 - p) * std::exp(nb_log0));
    } else {
      const double yi = static_cast<double>(y[i]);
      double nb = std::lgamma(yi + theta) - std::lgamma(theta) -
                  std::lgamma(yi + 1.0) + nb_log0 +
                  yi * (std::log(m) - std::log(theta + m));
      total += std::log(1.0 - p) + nb;
    }
  }
  return total;
}

}  // namespace rdnet::reference
