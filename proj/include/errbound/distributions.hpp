#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <string>

#include "errbound/common.hpp"
#include "errbound/quadrature.hpp"

namespace errbound {

using Rng = std::mt19937_64;

// Scalar observation density. window(mass) must return an interval holding
// at least 1-mass of the probability mass; sampler is optional and required
// only for Monte Carlo paths.
struct Density {
  std::function<double(double)> pdf;
  Interval support{-kInf, kInf};
  std::function<Interval(double)> window;
  std::function<double(Rng&)> sampler;
  std::string name = "custom";
};

namespace detail {

inline double uniform01(Rng& rng) {
  // 53-bit uniform in [0, 1)
  return (rng() >> 11) * 0x1.0p-53;
}

inline double sample_gaussian(Rng& rng, double mu, double sigma) {
  // Box-Muller, cosine branch only
  double u1 = uniform01(rng);
  double u2 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  return mu + sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

inline double gaussian_two_sided_tail(double k) {
  return std::erfc(k / std::sqrt(2.0));
}

}  // namespace detail

inline Density exponential_density(double lambda) {
  if (!(lambda > 0)) throw domain_error("exponential rate must be positive");
  Density d;
  d.name = "exponential(" + std::to_string(lambda) + ")";
  d.pdf = [lambda](double x) { return x < 0.0 ? 0.0 : lambda * std::exp(-lambda * x); };
  d.support = {0.0, kInf};
  d.window = [lambda](double mass) {
    return Interval{0.0, std::max(1.0, -std::log(mass) / lambda)};
  };
  d.sampler = [lambda](Rng& rng) {
    double u = detail::uniform01(rng);
    while (u >= 1.0) u = detail::uniform01(rng);
    return -std::log1p(-u) / lambda;
  };
  return d;
}

inline Density gaussian_density(double mu, double sigma) {
  if (!(sigma > 0)) throw domain_error("gaussian sigma must be positive");
  Density d;
  d.name = "gaussian(" + std::to_string(mu) + "," + std::to_string(sigma) + ")";
  const double norm = 1.0 / (sigma * std::sqrt(6.283185307179586));
  d.pdf = [mu, sigma, norm](double x) {
    double t = (x - mu) / sigma;
    return norm * std::exp(-0.5 * t * t);
  };
  d.window = [mu, sigma](double mass) {
    double k = 1.0;
    while (detail::gaussian_two_sided_tail(k) >= mass && k < 42.0) k += 0.5;
    return Interval{mu - k * sigma, mu + k * sigma};
  };
  d.sampler = [mu, sigma](Rng& rng) { return detail::sample_gaussian(rng, mu, sigma); };
  return d;
}

namespace detail {

// amplitude * shape(x) * exp(-|x|) with shape in [0, 1]; rejection against Laplace.
inline Density trig_laplace_density(double amplitude, std::function<double(double)> shape,
                                    std::string name) {
  Density d;
  d.name = std::move(name);
  d.pdf = [amplitude, shape](double x) { return amplitude * shape(x) * std::exp(-std::abs(x)); };
  d.window = [amplitude](double mass) {
    double t = std::log(2.0 * amplitude / mass) + 1.0;
    return Interval{-t, t};
  };
  d.sampler = [amplitude, shape](Rng& rng) {
    for (;;) {
      // Laplace(1) proposal via inverse CDF
      double u = uniform01(rng) - 0.5;
      double x = (u < 0 ? 1.0 : -1.0) * std::log1p(-2.0 * std::abs(u));
      if (uniform01(rng) < shape(x)) return x;
    }
  };
  return d;
}

}  // namespace detail

// (2/3) cos^2(x/2) e^{-|x|}
inline Density cos2_exp_density() {
  return detail::trig_laplace_density(
      2.0 / 3.0, [](double x) { double c = std::cos(0.5 * x); return c * c; }, "cos2-exp");
}

// 2 sin^2(x/2) e^{-|x|}
inline Density sin2_exp_density() {
  return detail::trig_laplace_density(
      2.0, [](double x) { double s = std::sin(0.5 * x); return s * s; }, "sin2-exp");
}

// (5/4) sin^2(x) e^{-|x|}
inline Density sin2x_exp_density() {
  return detail::trig_laplace_density(
      1.25, [](double x) { double s = std::sin(x); return s * s; }, "sin2x-exp");
}

// Fallback window for user densities with no tail formula: doubling search
// until the windowed mass reaches 1-mass.
inline Interval default_window(const Density& d, double mass) {
  double lo = std::isfinite(d.support.lo) ? d.support.lo : -1.0;
  double hi = std::isfinite(d.support.hi) ? d.support.hi : 1.0;
  if (lo >= hi) hi = lo + 1.0;
  for (int iter = 0; iter < 64; ++iter) {
    auto r = integrate(d.pdf, lo, hi, 1e-10, 1e-9, 4000);
    if (r.value >= 1.0 - mass) return Interval{lo, hi};
    double w = hi - lo;
    if (!std::isfinite(d.support.lo)) lo -= w;
    if (!std::isfinite(d.support.hi)) hi += w;
    if (std::isfinite(d.support.lo) && std::isfinite(d.support.hi))
      return Interval{d.support.lo, d.support.hi};
  }
  throw numerical_error("could not find a truncation window for density " + d.name);
}

inline Interval density_window(const Density& d, double mass) {
  if (d.window) return d.window(mass);
  return default_window(d, mass);
}

}  // namespace errbound
