#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rdnet/panel.hpp"

namespace rdnet {

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Covariate lists for the count and zero parts. Dummies are expanded at
// design-build time; reference categories are the most frequent sector and
// the earliest year.
struct ModelSpec {
  std::string name;
  std::vector<std::string> count_covariates;  // panel column names
  std::vector<std::string> zero_covariates;   // default: log_pat_pre
  bool sector_dummies = true;
  bool year_dummies = true;

  // Presets 1..5: the nested-to-full model ladder.
  static ModelSpec preset(int number);
};

struct DesignMatrices {
  Eigen::MatrixXd x_count;  // includes leading intercept column
  Eigen::MatrixXd x_zero;   // includes leading intercept column
  Eigen::VectorXd y;        // nonnegative counts
  std::vector<std::string> count_names;
  std::vector<std::string> zero_names;
  std::vector<int> cluster_ids;  // 0..n_clusters-1 per observation
  int n_clusters = 0;
  std::string cluster_variable;
};

// cluster_column may be any panel column name, "sector", or "year";
// clusters are the distinct values of that column.
DesignMatrices build_design(const Panel& panel, const ModelSpec& spec,
                            const std::string& cluster_column);

// Zero-inflated negative binomial log-likelihood:
//   pi_i = logistic(x_zero_i . gamma), mu_i = exp(x_count_i . beta),
//   theta = exp(log_theta), Var = mu + mu^2/theta.
// Evaluated in log space with a log-sum-exp at y = 0. Throws NumericalError
// naming the first offending row when non-finite.
double zinb_loglik(const Eigen::VectorXd& beta, const Eigen::VectorXd& gamma,
                   double log_theta, const Eigen::MatrixXd& x_count,
                   const Eigen::MatrixXd& x_zero, const Eigen::VectorXd& y);

// Joint log-likelihood and analytic gradient over the packed parameter
// vector [beta; gamma; log_theta]. Returns -inf on overflow instead of
// throwing (used by the optimizer's line search). Deterministic for any
// thread count (fixed-block reduction).
double zinb_loglik_grad(const Eigen::VectorXd& params,
                        const Eigen::MatrixXd& x_count,
                        const Eigen::MatrixXd& x_zero,
                        const Eigen::VectorXd& y, Eigen::VectorXd& grad);

// Per-observation log-likelihood contributions (for the Vuong test).
std::vector<double> zinb_loglik_perobs(const Eigen::VectorXd& beta,
                                       const Eigen::VectorXd& gamma,
                                       double log_theta,
                                       const Eigen::MatrixXd& x_count,
                                       const Eigen::MatrixXd& x_zero,
                                       const Eigen::VectorXd& y);

struct ZinbFit {
  std::string model_name;
  Eigen::VectorXd beta;
  Eigen::VectorXd gamma;
  double log_theta = 0.0;
  double loglik = 0.0;
  double aic = 0.0;  // 2k - 2 loglik, k = beta + gamma + 1 free parameters
  Eigen::MatrixXd cov_clustered;
  std::string cluster_variable;
  int n_clusters = 0;
  int n_obs = 0;
  bool converged = false;
  int iterations = 0;
  std::vector<std::string> count_names;
  std::vector<std::string> zero_names;

  int n_params() const {
    return static_cast<int>(beta.size() + gamma.size()) + 1;
  }
  // Clustered standard error for packed parameter index j.
  double se(int j) const { return std::sqrt(cov_clustered(j, j)); }
};

struct FitOptions {
  double grad_tol = 1e-6;  // sup-norm of the mean-loglik gradient
  int max_iter = 500;
  int restarts = 3;
};

// Maximum likelihood by BFGS with backtracking line search and multiple
// deterministic restarts; clustered sandwich covariance
// H^-1 (sum_c g_c g_c^T) H^-1 * C/(C-1) with H the Hessian of the total
// log-likelihood (central differences of the analytic gradient).
// Throws NumericalError on rank-deficient designs (naming the collinear
// columns) and on degenerate all-zero outcomes.
ZinbFit zinb_fit(const DesignMatrices& design, const FitOptions& options = {});
ZinbFit zinb_fit(const Panel& panel, const ModelSpec& spec,
                 const std::string& cluster_column,
                 const FitOptions& options = {});

struct VuongResult {
  double z_raw = 0.0, z_aic = 0.0, z_bic = 0.0;
  double p_raw = 1.0, p_aic = 1.0, p_bic = 1.0;  // one-sided
  std::string favored_raw, favored_aic, favored_bic;  // model names
  std::string model_a, model_b;
  int n_obs = 0;
};

// Vuong closeness test on per-observation log-likelihood differences
// m_i = ll_a_i - ll_b_i with sample-sd scaling; AIC/BIC corrections shift
// mean(m) by (k_a - k_b)/n and (k_a - k_b) log(n)/(2n). Throws
// NumericalError when sd(m) == 0 (models indistinguishable pointwise).
VuongResult vuong_test(const std::vector<double>& loglik_a,
                       const std::vector<double>& loglik_b, int k_a, int k_b,
                       const std::string& name_a = "A",
                       const std::string& name_b = "B");

// Reproducible draws: Bernoulli(pi_i) selects a structural zero, otherwise
// a negative binomial via the Gamma-Poisson mixture.
std::vector<long long> simulate_zinb(const Eigen::MatrixXd& x_count,
                                     const Eigen::MatrixXd& x_zero,
                                     const Eigen::VectorXd& beta,
                                     const Eigen::VectorXd& gamma,
                                     double log_theta, std::uint64_t seed);

// Text table (coefficient, clustered SE, significance stars) and a
// machine-readable JSON document with every ZinbFit field.
std::string format_fit_report(const ZinbFit& fit);
std::string fit_to_json(const ZinbFit& fit);
std::string format_vuong_report(const std::vector<VuongResult>& results);
std::string vuong_to_json(const std::vector<VuongResult>& results);

// Two-sided normal p-value and significance stars (*** p<0.001, ** p<0.01,
// * p<0.05).
double normal_cdf(double z);
std::string significance_stars(double p);

}  // namespace rdnet
