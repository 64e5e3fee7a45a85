// Benchmark: serial reference implementations vs the OpenMP kernels, plus
// thread scaling for the parallel kernels. Results double as a consistency
// check (max deviation printed per pair).

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "rdnet/centrality.hpp"
#include "rdnet/graph.hpp"
#include "rdnet/kcore.hpp"
#include "rdnet/reference.hpp"
#include "rdnet/zinb.hpp"
#include "../tests/test_util.hpp"

using namespace rdnet;

namespace {

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

template <typename F>
double timed(F&& f) {
  const double t0 = now_ms();
  f();
  return now_ms() - t0;
}

GraphSnapshot sparse_graph(int n, int edges_per_node, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::vector<std::tuple<int, int, long long>> edges;
  for (int v = 1; v < n; ++v)
    for (int e = 0; e < edges_per_node; ++e) {
      int u = static_cast<int>(eng() % v);
      if (u != v) edges.push_back({u, v, 1 + static_cast<long long>(eng() % 3)});
    }
  return testutil::graph_from_edges(n, edges);
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  int n_mid = 2500;     // reference-comparable sizes
  int n_big = 14000;    // kernel-only thread scaling
  if (argc > 1) n_big = std::atoi(argv[1]);
  const int max_threads = omp_get_max_threads();
  std::printf("threads available: %d\n\n", max_threads);

  // --- k-core: bucket/heap kernels vs the rescanning pruner -------------
  {
    GraphSnapshot g = sparse_graph(n_mid, 3, 1);
    ShellAssignment fast_u, fast_w, ref_u, ref_w;
    const double t_fast_u =
        timed([&] { fast_u = kcore_decompose(g, KcoreMode::Unweighted); });
    const double t_fast_w =
        timed([&] { fast_w = kcore_decompose(g, KcoreMode::Weighted); });
    const double t_ref_u =
        timed([&] { ref_u = reference::kcore_pruner(g, KcoreMode::Unweighted); });
    const double t_ref_w =
        timed([&] { ref_w = reference::kcore_pruner(g, KcoreMode::Weighted); });
    const bool agree = fast_u.k_s == ref_u.k_s && fast_w.k_s == ref_w.k_s;
    std::printf("kcore (n=%d, m=%lld)\n", g.n, g.edge_count());
    std::printf("  unweighted  kernel %8.1f ms   reference %8.1f ms\n",
                t_fast_u, t_ref_u);
    std::printf("  weighted    kernel %8.1f ms   reference %8.1f ms\n",
                t_fast_w, t_ref_w);
    std::printf("  assignments identical: %s\n\n", agree ? "yes" : "NO");
  }

  // --- betweenness: serial oracle (small), thread scaling (large) -------
  {
    GraphSnapshot g = sparse_graph(220, 2, 2);
    std::vector<double> kernel, oracle;
    const double t_kernel = timed([&] { kernel = betweenness_norm(g); });
    const double t_oracle =
        timed([&] { oracle = reference::betweenness_norm(g); });
    std::printf("betweenness oracle comparison (n=%d)\n", g.n);
    std::printf("  kernel %8.1f ms   exhaustive %8.1f ms   max diff %.2e\n\n",
                t_kernel, t_oracle, max_abs_diff(kernel, oracle));

    GraphSnapshot big = sparse_graph(n_big, 3, 3);
    omp_set_num_threads(1);
    std::vector<double> one;
    const double t1 = timed([&] { one = betweenness_norm(big); });
    omp_set_num_threads(max_threads);
    std::vector<double> many;
    const double tn = timed([&] { many = betweenness_norm(big); });
    std::printf("betweenness scaling (n=%d, m=%lld)\n", big.n,
                big.edge_count());
    std::printf("  1 thread %8.0f ms   %d threads %8.0f ms   speedup %.2fx   "
                "max diff %.2e\n\n",
                t1, max_threads, tn, t1 / tn, max_abs_diff(one, many));
  }

  // --- local measures ----------------------------------------------------
  {
    GraphSnapshot big = sparse_graph(n_big, 3, 4);
    omp_set_num_threads(1);
    std::vector<double> r1, c1, e1;
    const double tr1 = timed([&] { r1 = local_reach(big); });
    const double tc1 = timed([&] { c1 = local_clustering(big); });
    const double te1 = timed([&] { e1 = local_efficiency(big); });
    omp_set_num_threads(max_threads);
    std::vector<double> rn, cn, en;
    const double trn = timed([&] { rn = local_reach(big); });
    const double tcn = timed([&] { cn = local_clustering(big); });
    const double ten = timed([&] { en = local_efficiency(big); });
    std::printf("local measures scaling (n=%d)\n", big.n);
    std::printf("  reach       1T %8.0f ms   %dT %8.0f ms   diff %.2e\n", tr1,
                max_threads, trn, max_abs_diff(r1, rn));
    std::printf("  clustering  1T %8.0f ms   %dT %8.0f ms   diff %.2e\n", tc1,
                max_threads, tcn, max_abs_diff(c1, cn));
    std::printf("  eff size    1T %8.0f ms   %dT %8.0f ms   diff %.2e\n\n",
                te1, max_threads, ten, max_abs_diff(e1, en));
  }

  // --- ZINB log-likelihood + gradient ------------------------------------
  {
    const int n = 2000000;
    std::mt19937_64 eng(5);
    std::normal_distribution<double> norm(0.0, 1.0);
    Eigen::MatrixXd xc = Eigen::MatrixXd::Ones(n, 4);
    Eigen::MatrixXd xz = Eigen::MatrixXd::Ones(n, 2);
    for (int i = 0; i < n; ++i) {
      for (int j = 1; j < 4; ++j) xc(i, j) = norm(eng);
      xz(i, 1) = xc(i, 1);
    }
    Eigen::VectorXd beta(4), gamma(2);
    beta << 0.8, 0.4, -0.3, 0.2;
    gamma << -0.2, 0.6;
    auto y_ll = simulate_zinb(xc, xz, beta, gamma, std::log(1.4), 99);
    Eigen::VectorXd y(n);
    std::vector<long long> yv(y_ll.begin(), y_ll.end());
    std::vector<double> mu(n), pi(n);
    for (int i = 0; i < n; ++i) {
      y[i] = static_cast<double>(y_ll[i]);
      mu[i] = std::exp(xc.row(i).dot(beta));
      pi[i] = 1.0 / (1.0 + std::exp(-xz.row(i).dot(gamma)));
    }
    Eigen::VectorXd params(7), grad(7);
    params << beta, gamma, std::log(1.4);

    double ll_ref = 0.0;
    const double t_ref = timed(
        [&] { ll_ref = reference::zinb_loglik_serial(mu, pi, 1.4, yv); });
    omp_set_num_threads(1);
    double ll_1 = 0.0;
    const double t1 =
        timed([&] { ll_1 = zinb_loglik_grad(params, xc, xz, y, grad); });
    omp_set_num_threads(max_threads);
    double ll_n = 0.0;
    const double tn =
        timed([&] { ll_n = zinb_loglik_grad(params, xc, xz, y, grad); });
    std::printf("zinb loglik+gradient (n=%d)\n", n);
    std::printf("  serial formula   %8.0f ms  (value-only reference)\n", t_ref);
    std::printf("  kernel 1 thread  %8.0f ms\n", t1);
    std::printf("  kernel %d threads %7.0f ms   speedup %.2fx\n", max_threads,
                tn, t1 / tn);
    std::printf("  |kernel - reference| = %.3e, 1T vs %dT bit-equal: %s\n",
                std::abs(ll_1 - ll_ref), max_threads,
                ll_1 == ll_n ? "yes" : "NO");
  }
  return 0;
}
