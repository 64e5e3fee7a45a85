#include "rdnet/zinb.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rdnet/rng.hpp"

namespace rdnet {

namespace {

double softplus(double x) {
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

double digamma(double x) {
  double acc = 0.0;
  while (x < 8.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  return acc + std::log(x) - 0.5 * inv -
         inv2 * (1.0 / 12.0 -
                 inv2 * (1.0 / 120.0 -
                         inv2 * (1.0 / 252.0 -
                                 inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0)))));
}

struct ObsDerivs {
  double ll;       // log-likelihood contribution
  double d_xi;     // d ll / d (count linear predictor)
  double d_eta;    // d ll / d (zero linear predictor)
  double d_tau;    // d ll / d log_theta
};

// Per-observation log-likelihood and derivatives at eta/xi/theta.
ObsDerivs obs_derivs(double xi, double eta, double theta, double yi) {
  ObsDerivs o{};
  const double mu = std::exp(xi);
  const double log_pi = -softplus(-eta);        // log pi
  const double log_1mpi = -softplus(eta);       // log (1 - pi)
  const double pi = std::exp(log_pi);
  const double log_ratio = -std::log1p(mu / theta);  // log(theta/(theta+mu))
  const double frac_mu = mu / (theta + mu);

  if (yi == 0.0) {
    const double a = log_pi;
    const double b = log_1mpi + theta * log_ratio;
    const double hi = std::max(a, b);
    o.ll = hi + std::log(std::exp(a - hi) + std::exp(b - hi));
    const double r = std::exp(a - o.ll);       // posterior structural zero
    const double s = std::exp(b - o.ll);       // posterior NB zero
    o.d_eta = r - pi;
    o.d_xi = -s * theta * frac_mu;
    o.d_tau = s * theta * (log_ratio + frac_mu);
  } else {
    o.ll = log_1mpi + std::lgamma(yi + theta) - std::lgamma(theta) -
           std::lgamma(yi + 1.0) + theta * log_ratio +
           yi * (xi - std::log(theta + mu));
    o.d_eta = -pi;
    o.d_xi = yi - (yi + theta) * frac_mu;
    o.d_tau = theta * (digamma(yi + theta) - digamma(theta) + log_ratio +
                       (mu - yi) / (theta + mu));
  }
  return o;
}

constexpr int kBlock = 2048;  // fixed reduction blocks: thread-count stable

}  // namespace

double zinb_loglik(const Eigen::VectorXd& beta, const Eigen::VectorXd& gamma,
                   double log_theta, const Eigen::MatrixXd& x_count,
                   const Eigen::MatrixXd& x_zero, const Eigen::VectorXd& y) {
  auto per = zinb_loglik_perobs(beta, gamma, log_theta, x_count, x_zero, y);
  double total = 0.0;
  for (std::size_t i = 0; i < per.size(); ++i) {
    if (!std::isfinite(per[i]))
      throw NumericalError("non-finite ZINB log-likelihood at row " +
                           std::to_string(i));
    total += per[i];
  }
  return total;
}

std::vector<double> zinb_loglik_perobs(const Eigen::VectorXd& beta,
                                       const Eigen::VectorXd& gamma,
                                       double log_theta,
                                       const Eigen::MatrixXd& x_count,
                                       const Eigen::MatrixXd& x_zero,
                                       const Eigen::VectorXd& y) {
  const Eigen::Index n = y.size();
  if (x_count.rows() != n || x_zero.rows() != n)
    throw NumericalError("design matrices not conformable with y");
  const Eigen::VectorXd xi = x_count * beta;
  const Eigen::VectorXd eta = x_zero * gamma;
  const double theta = std::exp(log_theta);
  std::vector<double> out(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i)
    out[i] = obs_derivs(xi[i], eta[i], theta, y[i]).ll;
  return out;
}

double zinb_loglik_grad(const Eigen::VectorXd& params,
                        const Eigen::MatrixXd& x_count,
                        const Eigen::MatrixXd& x_zero,
                        const Eigen::VectorXd& y, Eigen::VectorXd& grad) {
  const Eigen::Index n = y.size();
  const Eigen::Index p = x_count.cols();
  const Eigen::Index q = x_zero.cols();
  const Eigen::VectorXd beta = params.head(p);
  const Eigen::VectorXd gamma = params.segment(p, q);
  const double theta = std::exp(params[p + q]);

  const Eigen::VectorXd xi = x_count * beta;
  const Eigen::VectorXd eta = x_zero * gamma;

  const int n_blocks = static_cast<int>((n + kBlock - 1) / kBlock);
  Eigen::MatrixXd g_count(p, n_blocks);
  Eigen::MatrixXd g_zero(q, n_blocks);
  Eigen::VectorXd g_tau(n_blocks);
  Eigen::VectorXd ll(n_blocks);

#pragma omp parallel for schedule(static)
  for (int b = 0; b < n_blocks; ++b) {
    const Eigen::Index lo = static_cast<Eigen::Index>(b) * kBlock;
    const Eigen::Index len = std::min<Eigen::Index>(kBlock, n - lo);
    Eigen::VectorXd w_xi(len), w_eta(len);
    double ll_acc = 0.0, tau_acc = 0.0;
    for (Eigen::Index i = 0; i < len; ++i) {
      ObsDerivs o = obs_derivs(xi[lo + i], eta[lo + i], theta, y[lo + i]);
      ll_acc += o.ll;
      tau_acc += o.d_tau;
      w_xi[i] = o.d_xi;
      w_eta[i] = o.d_eta;
    }
    g_count.col(b) = x_count.middleRows(lo, len).transpose() * w_xi;
    g_zero.col(b) = x_zero.middleRows(lo, len).transpose() * w_eta;
    g_tau[b] = tau_acc;
    ll[b] = ll_acc;
  }

  grad.resize(p + q + 1);
  grad.setZero();
  double total = 0.0;
  for (int b = 0; b < n_blocks; ++b) {  // fixed merge order
    grad.head(p) += g_count.col(b);
    grad.segment(p, q) += g_zero.col(b);
    grad[p + q] += g_tau[b];
    total += ll[b];
  }
  if (!std::isfinite(total)) return -std::numeric_limits<double>::infinity();
  return total;
}

ModelSpec ModelSpec::preset(int number) {
  ModelSpec spec;
  spec.zero_covariates = {"log_pat_pre"};
  switch (number) {
    case 1:
      spec.name = "Model 1";
      spec.count_covariates = {"log_pat_pre", "EFF", "BETWEENNESS_NORM"};
      break;
    case 2:
      spec.name = "Model 2";
      spec.count_covariates = {"log_pat_pre", "EFF",         "BETWEENNESS_NORM",
                               "DEGREE",      "LOCAL_REACH", "LOCAL_CLUSTERING"};
      break;
    case 3:
      spec.name = "Model 3";
      spec.count_covariates = {"log_pat_pre", "EFF",         "BETWEENNESS_NORM",
                               "DEGREE",      "LOCAL_REACH", "LOCAL_CLUSTERING",
                               "CORE"};
      break;
    case 4:
      spec.name = "Model 4";
      spec.count_covariates = {"log_pat_pre", "BETWEENNESS_NORM", "DEGREE",
                               "LOCAL_REACH", "LOCAL_CLUSTERING", "CORE"};
      break;
    case 5:
      spec.name = "Model 5";
      spec.count_covariates = {"log_pat_pre", "CORE"};
      break;
    default:
      throw std::invalid_argument("model preset must be 1..5");
  }
  return spec;
}

DesignMatrices build_design(const Panel& panel, const ModelSpec& spec,
                            const std::string& cluster_column) {
  const std::size_t n = panel.rows.size();
  if (n == 0) throw NumericalError("empty panel");

  // Dummy categories with deterministic reference choices.
  std::map<std::string, std::size_t> sector_count;
  std::set<int> years;
  for (const auto& r : panel.rows) {
    ++sector_count[r.sector];
    years.insert(r.year);
  }
  std::string ref_sector;
  std::size_t best = 0;
  for (const auto& [label, count] : sector_count)
    if (count > best) {  // ties resolve to the lexicographically smallest
      best = count;
      ref_sector = label;
    }
  std::vector<std::string> dummy_sectors;
  for (const auto& [label, count] : sector_count)
    if (label != ref_sector) dummy_sectors.push_back(label);
  std::vector<int> dummy_years(years.begin(), years.end());
  if (!dummy_years.empty()) dummy_years.erase(dummy_years.begin());  // ref = earliest

  DesignMatrices d;
  d.count_names.push_back("(Intercept)");
  for (const auto& c : spec.count_covariates) d.count_names.push_back(c);
  if (spec.sector_dummies)
    for (const auto& s : dummy_sectors) d.count_names.push_back("I_" + s);
  if (spec.year_dummies)
    for (int yv : dummy_years) d.count_names.push_back(std::to_string(yv));
  d.zero_names.push_back("(Intercept)");
  for (const auto& c : spec.zero_covariates) d.zero_names.push_back(c);

  const Eigen::Index pc = static_cast<Eigen::Index>(d.count_names.size());
  const Eigen::Index pz = static_cast<Eigen::Index>(d.zero_names.size());
  d.x_count.setZero(n, pc);
  d.x_zero.setZero(n, pz);
  d.y.resize(n);

  for (std::size_t i = 0; i < n; ++i) {
    const PanelRow& r = panel.rows[i];
    Eigen::Index col = 0;
    d.x_count(i, col++) = 1.0;
    for (const auto& c : spec.count_covariates)
      d.x_count(i, col++) = Panel::value(r, c);
    if (spec.sector_dummies)
      for (const auto& s : dummy_sectors)
        d.x_count(i, col++) = (r.sector == s) ? 1.0 : 0.0;
    if (spec.year_dummies)
      for (int yv : dummy_years) d.x_count(i, col++) = (r.year == yv) ? 1.0 : 0.0;

    col = 0;
    d.x_zero(i, col++) = 1.0;
    for (const auto& c : spec.zero_covariates)
      d.x_zero(i, col++) = Panel::value(r, c);

    d.y[i] = static_cast<double>(r.p_next);
  }

  // Cluster ids from the distinct values of the cluster column.
  d.cluster_variable = cluster_column;
  if (cluster_column == "sector") {
    std::map<std::string, int> ids;
    for (const auto& r : panel.rows) ids.emplace(r.sector, 0);
    int next = 0;
    for (auto& [k, v] : ids) v = next++;
    for (const auto& r : panel.rows) d.cluster_ids.push_back(ids[r.sector]);
    d.n_clusters = next;
  } else if (cluster_column == "year") {
    std::map<int, int> ids;
    for (const auto& r : panel.rows) ids.emplace(r.year, 0);
    int next = 0;
    for (auto& [k, v] : ids) v = next++;
    for (const auto& r : panel.rows) d.cluster_ids.push_back(ids[r.year]);
    d.n_clusters = next;
  } else if (cluster_column == "firm") {
    std::map<std::string, int> ids;
    for (const auto& r : panel.rows) ids.emplace(r.firm_name, 0);
    int next = 0;
    for (auto& [k, v] : ids) v = next++;
    for (const auto& r : panel.rows) d.cluster_ids.push_back(ids[r.firm_name]);
    d.n_clusters = next;
  } else {
    std::map<double, int> ids;
    for (const auto& r : panel.rows)
      ids.emplace(Panel::value(r, cluster_column), 0);
    int next = 0;
    for (auto& [k, v] : ids) v = next++;
    for (const auto& r : panel.rows)
      d.cluster_ids.push_back(ids[Panel::value(r, cluster_column)]);
    d.n_clusters = next;
  }
  return d;
}

namespace {

void check_full_rank(const Eigen::MatrixXd& x,
                     const std::vector<std::string>& names,
                     const std::string& part) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  const Eigen::Index rank = qr.rank();
  if (rank == x.cols()) return;
  // Columns pivoted past the numerical rank are the collinear ones.
  std::string victims;
  const auto& perm = qr.colsPermutation().indices();
  for (Eigen::Index i = rank; i < x.cols(); ++i) {
    if (!victims.empty()) victims += ", ";
    victims += names[perm[i]];
  }
  throw NumericalError(part + " design matrix is rank deficient; collinear "
                       "columns: " + victims);
}

struct InnerFit {
  Eigen::VectorXd params;
  double loglik = -std::numeric_limits<double>::infinity();
  bool converged = false;
  int iterations = 0;
};

InnerFit bfgs_maximize(const Eigen::VectorXd& start,
                       const Eigen::MatrixXd& xc, const Eigen::MatrixXd& xz,
                       const Eigen::VectorXd& y, const FitOptions& opt) {
  const double n = static_cast<double>(y.size());
  const Eigen::Index k = start.size();

  InnerFit fit;
  fit.params = start;

  Eigen::VectorXd g(k);
  double ll = zinb_loglik_grad(fit.params, xc, xz, y, g);
  if (!std::isfinite(ll)) return fit;
  Eigen::VectorXd mg = -g / n;  // gradient of mean negative loglik

  Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(k, k);
  for (int it = 0; it < opt.max_iter; ++it) {
    fit.iterations = it + 1;
    if (mg.lpNorm<Eigen::Infinity>() < opt.grad_tol) {
      fit.converged = true;
      break;
    }
    Eigen::VectorXd dir = -(h_inv * mg);
    double slope = dir.dot(mg);
    if (slope >= 0.0) {  // not a descent direction: reset curvature
      h_inv.setIdentity();
      dir = -mg;
      slope = dir.dot(mg);
    }

    const double f0 = -ll / n;
    double step = 1.0;
    double f_new = std::numeric_limits<double>::infinity();
    double ll_new = 0.0;
    Eigen::VectorXd params_new, g_new(k);
    bool accepted = false;
    while (step > 1e-14) {
      params_new = fit.params + step * dir;
      ll_new = zinb_loglik_grad(params_new, xc, xz, y, g_new);
      f_new = -ll_new / n;
      if (std::isfinite(f_new) && f_new <= f0 + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // line search stalled

    Eigen::VectorXd mg_new = -g_new / n;
    Eigen::VectorXd s = params_new - fit.params;
    Eigen::VectorXd yk = mg_new - mg;
    const double sy = s.dot(yk);
    if (sy > 1e-12 * s.norm() * yk.norm()) {
      const double rho = 1.0 / sy;
      Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(k, k);
      h_inv = (eye - rho * s * yk.transpose()) * h_inv *
                  (eye - rho * yk * s.transpose()) +
              rho * s * s.transpose();
    }
    fit.params = params_new;
    ll = ll_new;
    mg = mg_new;
  }
  if (!fit.converged && mg.lpNorm<Eigen::Infinity>() < opt.grad_tol)
    fit.converged = true;
  fit.loglik = ll;
  return fit;
}

// Central differences of the analytic gradient give the Hessian of the
// total log-likelihood at the optimum.
Eigen::MatrixXd numerical_hessian(const Eigen::VectorXd& params,
                                  const Eigen::MatrixXd& xc,
                                  const Eigen::MatrixXd& xz,
                                  const Eigen::VectorXd& y) {
  const Eigen::Index k = params.size();
  Eigen::MatrixXd h(k, k);
  Eigen::VectorXd gp(k), gm(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const double step = 6e-6 * std::max(1.0, std::abs(params[j]));
    Eigen::VectorXd wp = params, wm = params;
    wp[j] += step;
    wm[j] -= step;
    zinb_loglik_grad(wp, xc, xz, y, gp);
    zinb_loglik_grad(wm, xc, xz, y, gm);
    h.col(j) = (gp - gm) / (2.0 * step);
  }
  return 0.5 * (h + h.transpose());
}

Eigen::MatrixXd clustered_sandwich(const Eigen::VectorXd& params,
                                   const DesignMatrices& d,
                                   const Eigen::MatrixXd& hessian) {
  const Eigen::Index n = d.y.size();
  const Eigen::Index p = d.x_count.cols();
  const Eigen::Index q = d.x_zero.cols();
  const Eigen::Index k = p + q + 1;
  const double theta = std::exp(params[p + q]);
  const Eigen::VectorXd xi = d.x_count * params.head(p);
  const Eigen::VectorXd eta = d.x_zero * params.segment(p, q);

  Eigen::MatrixXd cluster_scores = Eigen::MatrixXd::Zero(k, d.n_clusters);
  for (Eigen::Index i = 0; i < n; ++i) {
    ObsDerivs o = obs_derivs(xi[i], eta[i], theta, d.y[i]);
    auto col = cluster_scores.col(d.cluster_ids[i]);
    col.head(p) += o.d_xi * d.x_count.row(i).transpose();
    col.segment(p, q) += o.d_eta * d.x_zero.row(i).transpose();
    col[p + q] += o.d_tau;
  }
  Eigen::MatrixXd meat = cluster_scores * cluster_scores.transpose();
  const double c = static_cast<double>(d.n_clusters);
  meat *= c / (c - 1.0);

  Eigen::MatrixXd h_inv = hessian.fullPivLu().inverse();
  Eigen::MatrixXd cov = h_inv * meat * h_inv;
  return 0.5 * (cov + cov.transpose());
}

}  // namespace

ZinbFit zinb_fit(const DesignMatrices& d, const FitOptions& options) {
  const Eigen::Index n = d.y.size();
  const Eigen::Index p = d.x_count.cols();
  const Eigen::Index q = d.x_zero.cols();
  if (d.n_clusters < 2)
    throw NumericalError("clustered covariance needs >= 2 clusters");
  if (d.y.maxCoeff() <= 0.0)
    throw NumericalError(
        "count part unidentified: every outcome is zero");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (d.y[i] < 0.0 || d.y[i] != std::floor(d.y[i]))
      throw NumericalError("outcomes must be nonnegative integers (row " +
                           std::to_string(i) + ")");
  }
  check_full_rank(d.x_count, d.count_names, "count");
  check_full_rank(d.x_zero, d.zero_names, "zero");

  // Moment-matched dispersion for the starting points.
  const double mean_y = d.y.mean();
  const double var_y =
      (d.y.array() - mean_y).square().sum() / std::max<double>(1.0, n - 1);
  double theta0 = var_y > mean_y && mean_y > 0.0
                      ? mean_y * mean_y / (var_y - mean_y)
                      : 10.0;
  theta0 = std::clamp(theta0, 0.05, 50.0);
  const double zero_frac = (d.y.array() == 0.0).count() / static_cast<double>(n);

  std::vector<Eigen::VectorXd> starts;
  {
    Eigen::VectorXd s0 = Eigen::VectorXd::Zero(p + q + 1);
    s0[p + q] = std::log(theta0);
    starts.push_back(s0);

    Eigen::VectorXd s1 = s0;
    s1[0] = std::log(mean_y + 0.5);
    const double zf = std::clamp(zero_frac, 0.05, 0.95);
    s1[p] = std::log(zf / (1.0 - zf));
    starts.push_back(s1);

    Eigen::VectorXd s2 = s0;
    rng::Engine eng(0xC0FFEEULL);
    rng::Normal normal;
    for (Eigen::Index j = 0; j < s2.size(); ++j) s2[j] += 0.05 * normal(eng);
    starts.push_back(s2);
  }

  InnerFit best;
  int tried = 0;
  for (const auto& s : starts) {
    if (tried++ >= options.restarts) break;
    InnerFit f = bfgs_maximize(s, d.x_count, d.x_zero, d.y, options);
    if (f.loglik > best.loglik || (f.converged && !best.converged))
      best = std::move(f);
    if (best.converged) break;
  }

  ZinbFit fit;
  fit.beta = best.params.head(p);
  fit.gamma = best.params.segment(p, q);
  fit.log_theta = best.params[p + q];
  fit.loglik = best.loglik;
  fit.converged = best.converged;
  fit.iterations = best.iterations;
  fit.n_obs = static_cast<int>(n);
  fit.n_clusters = d.n_clusters;
  fit.cluster_variable = d.cluster_variable;
  fit.count_names = d.count_names;
  fit.zero_names = d.zero_names;
  fit.aic = 2.0 * static_cast<double>(fit.n_params()) - 2.0 * fit.loglik;

  Eigen::MatrixXd hessian =
      numerical_hessian(best.params, d.x_count, d.x_zero, d.y);
  fit.cov_clustered = clustered_sandwich(best.params, d, hessian);
  return fit;
}

ZinbFit zinb_fit(const Panel& panel, const ModelSpec& spec,
                 const std::string& cluster_column, const FitOptions& options) {
  DesignMatrices d = build_design(panel, spec, cluster_column);
  ZinbFit fit = zinb_fit(d, options);
  fit.model_name = spec.name;
  return fit;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

std::string significance_stars(double p) {
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  return "";
}

VuongResult vuong_test(const std::vector<double>& loglik_a,
                       const std::vector<double>& loglik_b, int k_a, int k_b,
                       const std::string& name_a, const std::string& name_b) {
  if (loglik_a.size() != loglik_b.size() || loglik_a.empty())
    throw NumericalError("Vuong test needs matched per-observation "
                         "log-likelihoods");
  const double n = static_cast<double>(loglik_a.size());
  double mean = 0.0;
  for (std::size_t i = 0; i < loglik_a.size(); ++i)
    mean += loglik_a[i] - loglik_b[i];
  mean /= n;
  double ss = 0.0;
  for (std::size_t i = 0; i < loglik_a.size(); ++i) {
    const double d = loglik_a[i] - loglik_b[i] - mean;
    ss += d * d;
  }
  const double sd = std::sqrt(ss / (n - 1.0));
  if (sd == 0.0)
    throw NumericalError("models indistinguishable pointwise (sd of "
                         "per-observation differences is zero)");

  VuongResult r;
  r.model_a = name_a;
  r.model_b = name_b;
  r.n_obs = static_cast<int>(loglik_a.size());
  const double dk = static_cast<double>(k_a - k_b);
  r.z_raw = std::sqrt(n) * mean / sd;
  r.z_aic = std::sqrt(n) * (mean - dk / n) / sd;
  r.z_bic = std::sqrt(n) * (mean - dk * std::log(n) / (2.0 * n)) / sd;

  auto one_sided = [&](double z, std::string& favored) {
    if (z >= 0.0) {
      favored = name_a;
      return 1.0 - normal_cdf(z);
    }
    favored = name_b;
    return normal_cdf(z);
  };
  r.p_raw = one_sided(r.z_raw, r.favored_raw);
  r.p_aic = one_sided(r.z_aic, r.favored_aic);
  r.p_bic = one_sided(r.z_bic, r.favored_bic);
  return r;
}

std::vector<long long> simulate_zinb(const Eigen::MatrixXd& x_count,
                                     const Eigen::MatrixXd& x_zero,
                                     const Eigen::VectorXd& beta,
                                     const Eigen::VectorXd& gamma,
                                     double log_theta, std::uint64_t seed) {
  const Eigen::Index n = x_count.rows();
  if (x_zero.rows() != n)
    throw NumericalError("design matrices not conformable");
  const double theta = std::exp(log_theta);
  const Eigen::VectorXd xi = x_count * beta;
  const Eigen::VectorXd eta = x_zero * gamma;
  rng::Engine eng(seed);
  std::vector<long long> y(static_cast<std::size_t>(n), 0);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double pi = 1.0 / (1.0 + std::exp(-eta[i]));
    if (rng::bernoulli(eng, pi)) continue;  // structural zero
    y[i] = rng::neg_binomial(eng, std::exp(xi[i]), theta);
  }
  return y;
}

namespace {

std::string display_name(const std::string& col) {
  if (col == "log_pat_pre") return "log(PAT + 1)";
  return col;
}

void report_line(std::ostringstream& out, const std::string& label,
                 double coef, double se) {
  const double z = se > 0.0 ? coef / se : 0.0;
  const double p = se > 0.0 ? 2.0 * (1.0 - normal_cdf(std::abs(z))) : 1.0;
  char buf[112];
  std::snprintf(buf, sizeof(buf), "%-38s %10.4f (%.4f)  z %+7.2f %s",
                label.c_str(), coef, se, z, significance_stars(p).c_str());
  out << buf << '\n';
}

}  // namespace

std::string format_fit_report(const ZinbFit& fit) {
  std::ostringstream out;
  out << fit.model_name << " (zero-inflated negative binomial)\n";
  out << std::string(66, '=') << '\n';
  const Eigen::Index p = fit.beta.size();
  const Eigen::Index q = fit.gamma.size();
  for (Eigen::Index j = 0; j < q; ++j)
    report_line(out, "Zero model: " + display_name(fit.zero_names[j]),
                fit.gamma[j], fit.se(static_cast<int>(p + j)));
  out << std::string(66, '-') << '\n';
  for (Eigen::Index j = 0; j < p; ++j)
    report_line(out, display_name(fit.count_names[j]), fit.beta[j],
                fit.se(static_cast<int>(j)));
  report_line(out, "Log(theta)", fit.log_theta,
              fit.se(static_cast<int>(p + q)));
  out << std::string(66, '-') << '\n';
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%-38s %14.2f\n", "AIC", fit.aic);
  out << buf;
  std::snprintf(buf, sizeof(buf), "%-38s %14.2f\n", "Log Likelihood",
                fit.loglik);
  out << buf;
  std::snprintf(buf, sizeof(buf), "%-38s %14d\n", "Num. obs.", fit.n_obs);
  out << buf;
  std::snprintf(buf, sizeof(buf), "%-38s %14d\n",
                ("Num. clusters (" + fit.cluster_variable + ")").c_str(),
                fit.n_clusters);
  out << buf;
  std::snprintf(buf, sizeof(buf), "%-38s %14s\n", "Converged",
                fit.converged ? "yes" : "no");
  out << buf;
  out << "*** p<0.001, ** p<0.01, * p<0.05. SEs clustered by "
      << fit.cluster_variable << ".\n";
  return out.str();
}

std::string fit_to_json(const ZinbFit& fit) {
  nlohmann::json j;
  j["model"] = fit.model_name;
  j["converged"] = fit.converged;
  j["iterations"] = fit.iterations;
  j["loglik"] = fit.loglik;
  j["aic"] = fit.aic;
  j["n_obs"] = fit.n_obs;
  j["n_clusters"] = fit.n_clusters;
  j["cluster_variable"] = fit.cluster_variable;
  j["log_theta"] = fit.log_theta;
  const Eigen::Index p = fit.beta.size();
  const Eigen::Index q = fit.gamma.size();
  nlohmann::json count = nlohmann::json::object();
  for (Eigen::Index i = 0; i < p; ++i) {
    count[fit.count_names[i]] = {{"coef", fit.beta[i]},
                                 {"se", fit.se(static_cast<int>(i))}};
  }
  nlohmann::json zero = nlohmann::json::object();
  for (Eigen::Index i = 0; i < q; ++i) {
    zero[fit.zero_names[i]] = {{"coef", fit.gamma[i]},
                               {"se", fit.se(static_cast<int>(p + i))}};
  }
  j["count_part"] = count;
  j["zero_part"] = zero;
  std::vector<std::vector<double>> cov;
  for (Eigen::Index r = 0; r < fit.cov_clustered.rows(); ++r) {
    std::vector<double> row(fit.cov_clustered.cols());
    for (Eigen::Index c = 0; c < fit.cov_clustered.cols(); ++c)
      row[c] = fit.cov_clustered(r, c);
    cov.push_back(std::move(row));
  }
  j["cov_clustered"] = cov;
  return j.dump(2);
}

std::string format_vuong_report(const std::vector<VuongResult>& results) {
  std::ostringstream out;
  out << "Vuong closeness tests (one-sided)\n";
  out << std::string(72, '=') << '\n';
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-14s %12s   %-24s %10s\n", "", "z",
                "favors", "p");
  out << buf;
  for (const auto& r : results) {
    out << r.model_a << " vs " << r.model_b << " (n = " << r.n_obs << ")\n";
    std::snprintf(buf, sizeof(buf), "%-14s %12.4f   %-24s %10.6f\n", "Raw",
                  r.z_raw, r.favored_raw.c_str(), r.p_raw);
    out << buf;
    std::snprintf(buf, sizeof(buf), "%-14s %12.4f   %-24s %10.6f\n",
                  "AIC-corrected", r.z_aic, r.favored_aic.c_str(), r.p_aic);
    out << buf;
    std::snprintf(buf, sizeof(buf), "%-14s %12.4f   %-24s %10.6f\n",
                  "BIC-corrected", r.z_bic, r.favored_bic.c_str(), r.p_bic);
    out << buf;
    out << std::string(72, '-') << '\n';
  }
  return out.str();
}

std::string vuong_to_json(const std::vector<VuongResult>& results) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : results) {
    arr.push_back({{"model_a", r.model_a},
                   {"model_b", r.model_b},
                   {"n_obs", r.n_obs},
                   {"z_raw", r.z_raw},
                   {"z_aic", r.z_aic},
                   {"z_bic", r.z_bic},
                   {"p_raw", r.p_raw},
                   {"p_aic", r.p_aic},
                   {"p_bic", r.p_bic},
                   {"favored_raw", r.favored_raw},
                   {"favored_aic", r.favored_aic},
                   {"favored_bic", r.favored_bic}});
  }
  return arr.dump(2);
}

}  // namespace rdnet
