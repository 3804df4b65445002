#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "errbound/common.hpp"

namespace errbound {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

namespace detail {

// Gauss-Kronrod 7-15 abscissae and weights on [-1, 1].
inline constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
inline constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
inline constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694};

struct Panel {
  double a, b;
  double integral;
  double err;
};

template <class F>
Panel gk15(F&& f, double a, double b) {
  double c = 0.5 * (a + b);
  double hw = 0.5 * (b - a);
  auto eval = [&](double x) {
    double v = f(x);
    if (!std::isfinite(v))
      throw nonfinite_error("integrand non-finite at x=" + std::to_string(x), x, v);
    return v;
  };
  double resk = 0.0, resg = 0.0;
  double fc = eval(c);
  resk += kWgk[7] * fc;
  resg += kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    double dx = hw * kXgk[j];
    double f1 = eval(c - dx);
    double f2 = eval(c + dx);
    resk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.integral = resk * hw;
  p.err = std::abs((resk - resg) * hw);
  return p;
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod integration on a finite interval.
template <class F>
QuadratureResult integrate(F&& f, double a, double b, double abs_tol = 1e-10,
                           double rel_tol = 1e-8, int max_subdivisions = 2000) {
  QuadratureResult r;
  if (a == b) return r;
  std::vector<detail::Panel> panels;
  panels.push_back(detail::gk15(f, a, b));
  r.evaluations = 15;
  int splits = 0;
  auto worst = [&]() {
    std::size_t k = 0;
    for (std::size_t i = 1; i < panels.size(); ++i)
      if (panels[i].err > panels[k].err) k = i;
    return k;
  };
  for (;;) {
    double total = 0.0, err = 0.0;
    for (const auto& p : panels) {
      total += p.integral;
      err += p.err;
    }
    double tol = std::max(abs_tol, rel_tol * std::abs(total));
    if (err <= tol) {
      r.value = total;
      r.error_estimate = err;
      return r;
    }
    if (splits >= max_subdivisions)
      throw convergence_error("quadrature did not converge", total, err);
    std::size_t k = worst();
    detail::Panel p = panels[k];
    double mid = 0.5 * (p.a + p.b);
    if (mid <= p.a || mid >= p.b)
      throw convergence_error("quadrature interval underflow", p.integral, p.err);
    panels[k] = detail::gk15(f, p.a, mid);
    panels.push_back(detail::gk15(f, mid, p.b));
    r.evaluations += 30;
    ++splits;
  }
}

}  // namespace errbound
