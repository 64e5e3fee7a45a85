#pragma once

#include <cmath>
#include <cstdint>
#include <random>

// Samplers with fully specified algorithms on top of mt19937_64, so draws
// are byte-identical across standard library implementations (std::*_distribution
// algorithms are implementation-defined).
namespace rdnet::rng {

using Engine = std::mt19937_64;

// Uniform on (0, 1).
inline double uniform01(Engine& eng) {
  for (;;) {
    double u = static_cast<double>(eng() >> 11) * 0x1.0p-53;
    if (u > 0.0) return u;
  }
}

inline bool bernoulli(Engine& eng, double p) { return uniform01(eng) < p; }

// Box-Muller; consumes exactly two uniforms per pair, caching the second.
class Normal {
 public:
  double operator()(Engine& eng) {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform01(eng);
    double u2 = uniform01(eng);
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

 private:
  bool has_spare_ = false;
  double spare_ = 0.0;
};

inline double normal(Engine& eng) {
  Normal n;  // uncached variant: one value, two uniforms
  return n(eng);
}

// Marsaglia-Tsang squeeze method; shape < 1 boosted via Gamma(shape+1).
inline double gamma(Engine& eng, double shape, double scale) {
  if (shape < 1.0) {
    double u = uniform01(eng);
    return gamma(eng, shape + 1.0, scale) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  Normal norm;
  for (;;) {
    double x = norm(eng);
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    double u = uniform01(eng);
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
      return d * v * scale;
  }
}

// Multiplication method for small means, PTRS transformed rejection
// (Hormann) for large means.
inline long long poisson(Engine& eng, double mean) {
  if (mean <= 0.0) return 0;
  if (mean < 10.0) {
    const double limit = std::exp(-mean);
    long long k = 0;
    double prod = uniform01(eng);
    while (prod > limit) {
      ++k;
      prod *= uniform01(eng);
    }
    return k;
  }
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    double u = uniform01(eng) - 0.5;
    double v = uniform01(eng);
    double us = 0.5 - std::abs(u);
    double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<long long>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        -mean + k * std::log(mean) - std::lgamma(k + 1.0))
      return static_cast<long long>(k);
  }
}

// Negative binomial with mean mu and dispersion theta (Var = mu + mu^2/theta)
// as a Gamma-Poisson mixture.
inline long long neg_binomial(Engine& eng, double mu, double theta) {
  if (mu <= 0.0) return 0;
  double lambda = gamma(eng, theta, mu / theta);
  return poisson(eng, lambda);
}

}  // namespace rdnet::rng
