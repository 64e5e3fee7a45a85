#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "rdnet/zinb.hpp"

using namespace rdnet;

namespace {

// Independent negative binomial log-density (mean-dispersion form), written
// directly from the pmf.
double nb_logpmf(double y, double mu, double theta) {
  return std::lgamma(y + theta) - std::lgamma(theta) - std::lgamma(y + 1.0) +
         theta * std::log(theta / (theta + mu)) +
         y * std::log(mu / (theta + mu));
}

double poisson_logpmf(double y, double mu) {
  return y * std::log(mu) - mu - std::lgamma(y + 1.0);
}

struct TestData {
  Eigen::MatrixXd xc, xz;
  Eigen::VectorXd y;
};

TestData random_design(std::mt19937_64& eng, int n, int p, int q) {
  std::normal_distribution<double> norm(0.0, 1.0);
  TestData d;
  d.xc.setOnes(n, p);
  d.xz.setOnes(n, q);
  for (int i = 0; i < n; ++i) {
    for (int j = 1; j < p; ++j) d.xc(i, j) = norm(eng);
    for (int j = 1; j < q; ++j) d.xz(i, j) = norm(eng);
  }
  return d;
}

}  // namespace

TEST_CASE("with the zero part disabled the likelihood is plain NB") {
  std::mt19937_64 eng(1);
  TestData d = random_design(eng, 50, 3, 1);
  Eigen::VectorXd beta(3);
  beta << 0.4, 0.3, -0.2;
  Eigen::VectorXd gamma(1);
  gamma << -30.0;  // pi ~ 0
  const double log_theta = std::log(1.7);
  std::uniform_int_distribution<int> yd(0, 12);
  d.y.resize(50);
  for (int i = 0; i < 50; ++i) d.y[i] = yd(eng);

  double ll = zinb_loglik(beta, gamma, log_theta, d.xc, d.xz, d.y);
  double expected = 0.0;
  for (int i = 0; i < 50; ++i) {
    double mu = std::exp(d.xc.row(i).dot(beta));
    expected += nb_logpmf(d.y[i], mu, 1.7);
  }
  CHECK(ll == doctest::Approx(expected).epsilon(1e-8));
}

TEST_CASE("huge dispersion with no zero inflation approaches Poisson") {
  std::mt19937_64 eng(2);
  TestData d = random_design(eng, 40, 2, 1);
  Eigen::VectorXd beta(2);
  beta << 0.5, 0.2;
  Eigen::VectorXd gamma(1);
  gamma << -30.0;
  std::uniform_int_distribution<int> yd(0, 6);
  d.y.resize(40);
  for (int i = 0; i < 40; ++i) d.y[i] = yd(eng);

  double ll = zinb_loglik(beta, gamma, 20.0, d.xc, d.xz, d.y);
  double expected = 0.0;
  for (int i = 0; i < 40; ++i) {
    double mu = std::exp(d.xc.row(i).dot(beta));
    expected += poisson_logpmf(d.y[i], mu);
  }
  CHECK(ll == doctest::Approx(expected).epsilon(1e-4));
}

TEST_CASE("single zero observation has the closed-form likelihood") {
  Eigen::MatrixXd xc = Eigen::MatrixXd::Ones(1, 1);
  Eigen::MatrixXd xz = Eigen::MatrixXd::Ones(1, 1);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(1);
  Eigen::VectorXd beta(1), gamma(1);
  beta << 1.3;                 // mu = e^1.3
  gamma << 0.0;                // pi = 0.5
  const double theta = 2.0;
  const double mu = std::exp(1.3);
  const double expected =
      std::log(0.5 + 0.5 * std::pow(theta / (theta + mu), theta));
  CHECK(zinb_loglik(beta, gamma, std::log(theta), xc, xz, y) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("analytic gradient matches central finite differences") {
  std::mt19937_64 eng(3);
  std::normal_distribution<double> norm(0.0, 0.6);
  TestData d = random_design(eng, 60, 3, 2);
  d.y.resize(60);
  std::uniform_int_distribution<int> yd(0, 9);
  for (int i = 0; i < 60; ++i) d.y[i] = (i % 3 == 0) ? 0 : yd(eng);

  const int k = 3 + 2 + 1;
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd w(k);
    for (int j = 0; j < k; ++j) w[j] = norm(eng);
    Eigen::VectorXd grad(k);
    zinb_loglik_grad(w, d.xc, d.xz, d.y, grad);
    for (int j = 0; j < k; ++j) {
      const double h = 1e-6 * std::max(1.0, std::abs(w[j]));
      Eigen::VectorXd wp = w, wm = w;
      wp[j] += h;
      wm[j] -= h;
      Eigen::VectorXd dummy(k);
      const double fp = zinb_loglik_grad(wp, d.xc, d.xz, d.y, dummy);
      const double fm = zinb_loglik_grad(wm, d.xc, d.xz, d.y, dummy);
      const double fd = (fp - fm) / (2.0 * h);
      CHECK(grad[j] ==
            doctest::Approx(fd).epsilon(1e-6).scale(std::abs(fd) + 1.0));
    }
  }
}

TEST_CASE("log-likelihood is invariant under observation reordering") {
  std::mt19937_64 eng(4);
  TestData d = random_design(eng, 100, 2, 2);
  d.y.resize(100);
  std::uniform_int_distribution<int> yd(0, 5);
  for (int i = 0; i < 100; ++i) d.y[i] = yd(eng);
  Eigen::VectorXd beta(2), gamma(2);
  beta << 0.3, -0.4;
  gamma << 0.2, 0.5;

  double base = zinb_loglik(beta, gamma, 0.1, d.xc, d.xz, d.y);
  std::vector<int> perm(100);
  for (int i = 0; i < 100; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), eng);
  TestData s = d;
  for (int i = 0; i < 100; ++i) {
    s.xc.row(i) = d.xc.row(perm[i]);
    s.xz.row(i) = d.xz.row(perm[i]);
    s.y[i] = d.y[perm[i]];
  }
  double shuffled = zinb_loglik(beta, gamma, 0.1, s.xc, s.xz, s.y);
  CHECK(shuffled == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("non-finite likelihood names the offending row") {
  Eigen::MatrixXd xc = Eigen::MatrixXd::Ones(2, 1);
  xc(1, 0) = 1000.0;  // exp overflows
  Eigen::MatrixXd xz = Eigen::MatrixXd::Ones(2, 1);
  Eigen::VectorXd y(2);
  y << 1, 2;
  Eigen::VectorXd beta(1), gamma(1);
  beta << 1.0;
  gamma << 0.0;
  CHECK_THROWS_WITH_AS(zinb_loglik(beta, gamma, 0.0, xc, xz, y),
                       "non-finite ZINB log-likelihood at row 1",
                       NumericalError);
}

TEST_CASE("simulator respects the mixture limits and the fixed seed") {
  std::mt19937_64 eng(5);
  TestData d = random_design(eng, 2000, 2, 1);
  Eigen::VectorXd beta(2), gamma(1);
  beta << 1.0, 0.3;

  gamma << 30.0;  // pi ~ 1: everything is a structural zero
  auto all_zero = simulate_zinb(d.xc, d.xz, beta, gamma, 0.0, 11);
  CHECK(*std::max_element(all_zero.begin(), all_zero.end()) == 0);

  gamma << -30.0;  // pi ~ 0 and theta huge: mean matches mean(mu)
  TestData big = random_design(eng, 100000, 2, 1);
  auto y = simulate_zinb(big.xc, big.xz, beta, gamma, 20.0, 12);
  double mean_mu = 0.0, mean_y = 0.0;
  for (int i = 0; i < big.xc.rows(); ++i) {
    mean_mu += std::exp(big.xc.row(i).dot(beta));
    mean_y += static_cast<double>(y[i]);
  }
  mean_mu /= big.xc.rows();
  mean_y /= big.xc.rows();
  CHECK(mean_y == doctest::Approx(mean_mu).epsilon(0.02));

  auto y2 = simulate_zinb(big.xc, big.xz, beta, gamma, 20.0, 12);
  CHECK(y == y2);  // byte-identical under the same seed
}

TEST_CASE("AIC identity holds exactly for a fitted model") {
  std::mt19937_64 eng(6);
  TestData d = random_design(eng, 3000, 3, 2);
  Eigen::VectorXd beta(3), gamma(2);
  beta << 0.8, 0.5, -0.3;
  gamma << -0.4, 0.7;
  auto y_ll = simulate_zinb(d.xc, d.xz, beta, gamma, std::log(1.5), 21);
  DesignMatrices design;
  design.x_count = d.xc;
  design.x_zero = d.xz;
  design.y.resize(3000);
  for (int i = 0; i < 3000; ++i) design.y[i] = static_cast<double>(y_ll[i]);
  design.count_names = {"(Intercept)", "x1", "x2"};
  design.zero_names = {"(Intercept)", "z1"};
  design.cluster_ids.resize(3000);
  for (int i = 0; i < 3000; ++i) design.cluster_ids[i] = i % 25;
  design.n_clusters = 25;
  design.cluster_variable = "synthetic";

  ZinbFit fit = zinb_fit(design);
  CHECK(fit.converged);
  CHECK(fit.aic ==
        doctest::Approx(2.0 * fit.n_params() - 2.0 * fit.loglik).epsilon(1e-12));
  // parameters recovered to a loose tolerance at n = 3000
  CHECK(fit.beta[1] == doctest::Approx(0.5).epsilon(0.15));
  CHECK(fit.gamma[1] == doctest::Approx(0.7).epsilon(0.25));
  // covariance is symmetric PSD
  for (int a = 0; a < fit.cov_clustered.rows(); ++a) {
    CHECK(fit.cov_clustered(a, a) > 0.0);
    for (int b = 0; b < fit.cov_clustered.cols(); ++b)
      CHECK(fit.cov_clustered(a, b) ==
            doctest::Approx(fit.cov_clustered(b, a)).epsilon(1e-9));
  }
}

TEST_CASE("clustered covariance ignores within-cluster reordering") {
  std::mt19937_64 eng(7);
  TestData d = random_design(eng, 400, 2, 1);
  Eigen::VectorXd beta(2), gamma(1);
  beta << 0.6, 0.4;
  gamma << -0.2;
  auto y_ll = simulate_zinb(d.xc, d.xz, beta, gamma, 0.3, 31);
  DesignMatrices design;
  design.x_count = d.xc;
  design.x_zero = d.xz;
  design.y.resize(400);
  for (int i = 0; i < 400; ++i) design.y[i] = static_cast<double>(y_ll[i]);
  design.count_names = {"(Intercept)", "x1"};
  design.zero_names = {"(Intercept)"};
  design.cluster_ids.resize(400);
  for (int i = 0; i < 400; ++i) design.cluster_ids[i] = i % 8;
  design.n_clusters = 8;
  design.cluster_variable = "synthetic";
  ZinbFit fit1 = zinb_fit(design);

  // permute rows within each cluster (here: rotate rows by a multiple of
  // the cluster count, preserving cluster membership)
  DesignMatrices rot = design;
  const int shift = 8 * 13;
  for (int i = 0; i < 400; ++i) {
    const int j = (i + shift) % 400;
    rot.x_count.row(i) = design.x_count.row(j);
    rot.x_zero.row(i) = design.x_zero.row(j);
    rot.y[i] = design.y[j];
    rot.cluster_ids[i] = design.cluster_ids[j];
  }
  ZinbFit fit2 = zinb_fit(rot);
  for (int a = 0; a < fit1.cov_clustered.rows(); ++a)
    CHECK(fit1.se(a) == doctest::Approx(fit2.se(a)).epsilon(1e-5));
}

TEST_CASE("degenerate all-zero outcomes raise an identification error") {
  DesignMatrices design;
  design.x_count = Eigen::MatrixXd::Ones(10, 1);
  design.x_zero = Eigen::MatrixXd::Ones(10, 1);
  design.y = Eigen::VectorXd::Zero(10);
  design.count_names = {"(Intercept)"};
  design.zero_names = {"(Intercept)"};
  design.cluster_ids.assign(10, 0);
  for (int i = 5; i < 10; ++i) design.cluster_ids[i] = 1;
  design.n_clusters = 2;
  CHECK_THROWS_AS(zinb_fit(design), NumericalError);
}

TEST_CASE("collinear columns are reported by name") {
  std::mt19937_64 eng(8);
  TestData d = random_design(eng, 200, 3, 1);
  d.xc.col(2) = 2.0 * d.xc.col(1);  // exact collinearity
  DesignMatrices design;
  design.x_count = d.xc;
  design.x_zero = d.xz;
  design.y = Eigen::VectorXd::Ones(200);
  design.count_names = {"(Intercept)", "good", "twice_good"};
  design.zero_names = {"(Intercept)"};
  design.cluster_ids.resize(200);
  for (int i = 0; i < 200; ++i) design.cluster_ids[i] = i % 4;
  design.n_clusters = 4;
  try {
    zinb_fit(design);
    FAIL("expected rank error");
  } catch (const NumericalError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("rank deficient") != std::string::npos);
    const bool names_one = msg.find("good") != std::string::npos;
    CHECK(names_one);
  }
}

TEST_CASE("model presets form the expected covariate ladder") {
  auto m1 = ModelSpec::preset(1);
  auto m2 = ModelSpec::preset(2);
  auto m3 = ModelSpec::preset(3);
  auto m4 = ModelSpec::preset(4);
  auto m5 = ModelSpec::preset(5);
  CHECK(m1.count_covariates ==
        std::vector<std::string>{"log_pat_pre", "EFF", "BETWEENNESS_NORM"});
  // model 2 extends model 1
  for (const auto& c : m1.count_covariates)
    CHECK(std::count(m2.count_covariates.begin(), m2.count_covariates.end(),
                     c) == 1);
  CHECK(std::count(m2.count_covariates.begin(), m2.count_covariates.end(),
                   "DEGREE") == 1);
  CHECK(std::count(m2.count_covariates.begin(), m2.count_covariates.end(),
                   "CORE") == 0);
  // model 3 = model 2 + CORE
  CHECK(m3.count_covariates.size() == m2.count_covariates.size() + 1);
  CHECK(std::count(m3.count_covariates.begin(), m3.count_covariates.end(),
                   "CORE") == 1);
  // model 4 = model 3 - EFF
  CHECK(std::count(m4.count_covariates.begin(), m4.count_covariates.end(),
                   "EFF") == 0);
  CHECK(std::count(m4.count_covariates.begin(), m4.count_covariates.end(),
                   "CORE") == 1);
  // model 5 keeps CORE as the only centrality
  CHECK(m5.count_covariates ==
        std::vector<std::string>{"log_pat_pre", "CORE"});
  // the zero part is intercept + log(PAT + 1) everywhere
  for (const auto& m : {m1, m2, m3, m4, m5})
    CHECK(m.zero_covariates == std::vector<std::string>{"log_pat_pre"});
}
