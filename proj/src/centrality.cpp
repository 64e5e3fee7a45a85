#include "rdnet/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace rdnet {

std::vector<int> degree(const GraphSnapshot& g) {
  std::vector<int> d(g.n);
  for (int v = 0; v < g.n; ++v) d[v] = g.degree(v);
  return d;
}

namespace {

// One Brandes source accumulation (BFS variant), adding dependencies
// into acc.
void brandes_source_hops(const GraphSnapshot& g, int s,
                         std::vector<double>& acc, std::vector<int>& dist,
                         std::vector<double>& sigma,
                         std::vector<double>& delta, std::vector<int>& order) {
  std::fill(dist.begin(), dist.end(), -1);
  std::fill(sigma.begin(), sigma.end(), 0.0);
  std::fill(delta.begin(), delta.end(), 0.0);
  order.clear();

  dist[s] = 0;
  sigma[s] = 1.0;
  std::size_t head = 0;
  order.push_back(s);
  while (head < order.size()) {
    int v = order[head++];
    for (int u : g.neigh(v)) {
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        order.push_back(u);
      }
      if (dist[u] == dist[v] + 1) sigma[u] += sigma[v];
    }
  }
  for (std::size_t i = order.size(); i-- > 1;) {
    int w = order[i];
    double coeff = (1.0 + delta[w]) / sigma[w];
    for (int v : g.neigh(w))
      if (dist[v] == dist[w] - 1) delta[v] += sigma[v] * coeff;
    if (w != s) acc[w] += delta[w];
  }
}

// Dijkstra variant with edge cost 1/w. Path-count equality uses a relative
// tolerance since distances are sums of reciprocals.
void brandes_source_invw(const GraphSnapshot& g, int s,
                         std::vector<double>& acc, std::vector<double>& dist,
                         std::vector<double>& sigma,
                         std::vector<double>& delta, std::vector<int>& order) {
  constexpr double kEps = 1e-12;
  const int n = g.n;
  std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
  std::fill(sigma.begin(), sigma.end(), 0.0);
  std::fill(delta.begin(), delta.end(), 0.0);
  order.clear();

  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
  dist[s] = 0.0;
  sigma[s] = 1.0;
  pq.emplace(0.0, s);
  std::vector<char> settled(n, 0);
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (settled[v]) continue;
    settled[v] = 1;
    order.push_back(v);
    auto nb = g.neigh(v);
    auto wt = g.neigh_weights(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      int u = nb[i];
      double nd = d + 1.0 / static_cast<double>(wt[i]);
      if (nd < dist[u] * (1.0 - kEps)) {
        dist[u] = nd;
        sigma[u] = sigma[v];
        pq.emplace(nd, u);
      } else if (std::abs(nd - dist[u]) <= kEps * std::max(1.0, dist[u])) {
        sigma[u] += sigma[v];
      }
    }
  }
  for (std::size_t i = order.size(); i-- > 1;) {
    int w = order[i];
    double coeff = (1.0 + delta[w]) / sigma[w];
    auto nb = g.neigh(w);
    auto wt = g.neigh_weights(w);
    for (std::size_t i2 = 0; i2 < nb.size(); ++i2) {
      int v = nb[i2];
      double via = dist[v] + 1.0 / static_cast<double>(wt[i2]);
      if (std::abs(via - dist[w]) <= kEps * std::max(1.0, dist[w]))
        delta[v] += sigma[v] * coeff;
    }
    if (w != s) acc[w] += delta[w];
  }
}

}  // namespace

std::vector<double> betweenness_norm(const GraphSnapshot& g,
                                     BetweennessCosts costs) {
  const int n = g.n;
  std::vector<double> cb(n, 0.0);
  if (n < 3) return cb;

  // Sources are partitioned into fixed blocks; blocks run in parallel and
  // are merged in index order, so the floating-point result is identical
  // for any thread count.
  const int n_blocks = std::min(n, 256);
  const int block_size = (n + n_blocks - 1) / n_blocks;
  std::vector<std::vector<double>> partial(n_blocks);

#pragma omp parallel for schedule(dynamic)
  for (int b = 0; b < n_blocks; ++b) {
    std::vector<double>& acc = partial[b];
    acc.assign(n, 0.0);
    std::vector<int> dist_i(n), order;
    std::vector<double> dist_d(n), sigma(n), delta(n);
    order.reserve(n);
    const int lo = b * block_size;
    const int hi = std::min(n, lo + block_size);
    for (int s = lo; s < hi; ++s) {
      if (costs == BetweennessCosts::Hops)
        brandes_source_hops(g, s, acc, dist_i, sigma, delta, order);
      else
        brandes_source_invw(g, s, acc, dist_d, sigma, delta, order);
    }
  }
  for (int b = 0; b < n_blocks; ++b)
    for (int v = 0; v < n; ++v) cb[v] += partial[b][v];

  // Each unordered pair was counted from both endpoints; the pair count
  // normalization is (n-1)(n-2)/2, so divide by (n-1)(n-2) in total.
  const double scale =
      1.0 / (static_cast<double>(n - 1) * static_cast<double>(n - 2));
  for (double& x : cb) x *= scale;
  return cb;
}

std::vector<double> local_clustering(const GraphSnapshot& g) {
  const int n = g.n;
  std::vector<double> c(n, 0.0);
#pragma omp parallel for schedule(dynamic, 64)
  for (int v = 0; v < n; ++v) {
    const int d = g.degree(v);
    if (d < 2) continue;
    auto nb = g.neigh(v);
    long long links = 0;  // ordered neighbor pairs that are adjacent
    for (int u : nb) {
      auto un = g.neigh(u);
      // |N(v) ∩ N(u)| by sorted merge
      std::size_t i = 0, j = 0;
      while (i < nb.size() && j < un.size()) {
        if (nb[i] < un[j]) ++i;
        else if (nb[i] > un[j]) ++j;
        else { ++links; ++i; ++j; }
      }
    }
    // links counted each undirected neighbor edge twice
    c[v] = static_cast<double>(links) /
           (static_cast<double>(d) * static_cast<double>(d - 1));
  }
  return c;
}

std::vector<double> local_reach(const GraphSnapshot& g) {
  const int n = g.n;
  std::vector<double> reach(n, 0.0);
#pragma omp parallel
  {
    std::vector<int> dist(n), queue;
    queue.reserve(n);
#pragma omp for schedule(dynamic, 16)
    for (int s = 0; s < n; ++s) {
      std::fill(dist.begin(), dist.end(), -1);
      queue.clear();
      dist[s] = 0;
      queue.push_back(s);
      std::size_t head = 0;
      double acc = 0.0;
      while (head < queue.size()) {
        int v = queue[head++];
        if (v != s) acc += 1.0 / dist[v];
        for (int u : g.neigh(v)) {
          if (dist[u] < 0) {
            dist[u] = dist[v] + 1;
            queue.push_back(u);
          }
        }
      }
      reach[s] = acc;
    }
  }
  return reach;
}

std::vector<double> local_efficiency(const GraphSnapshot& g, bool normalized) {
  const int n = g.n;
  std::vector<double> eff(n, 0.0);
#pragma omp parallel for schedule(dynamic, 64)
  for (int v = 0; v < n; ++v) {
    const int d = g.degree(v);
    if (d == 0) continue;
    auto nb = g.neigh(v);
    auto wt = g.neigh_weights(v);
    const double strength = static_cast<double>(g.strength(v));
    double total = 0.0;
    for (std::size_t j = 0; j < nb.size(); ++j) {
      double redundancy = 0.0;
      auto jn = g.neigh(nb[j]);
      for (std::size_t k = 0; k < nb.size(); ++k) {
        if (k == j) continue;
        if (std::binary_search(jn.begin(), jn.end(), nb[k]))
          redundancy += static_cast<double>(wt[k]) / strength;
      }
      total += 1.0 - redundancy;
    }
    eff[v] = normalized ? total / d : total;
  }
  return eff;
}

CentralityVectors compute_all(const GraphSnapshot& g) {
  CentralityVectors out;
  out.degree = degree(g);
  out.betweenness_norm = betweenness_norm(g);
  out.local_clustering = local_clustering(g);
  out.local_reach = local_reach(g);
  out.local_efficiency = local_efficiency(g);
  return out;
}

}  // namespace rdnet
