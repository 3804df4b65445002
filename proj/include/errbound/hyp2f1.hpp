#pragma once

#include <cmath>
#include <string>

#include "errbound/common.hpp"

namespace errbound {

struct Hyp2F1Args {
  double a, b, c, z;
};

namespace detail {

inline bool is_nonpositive_integer(double x) {
  return x <= 0.0 && x == std::floor(x);
}

// Direct power series; requires |z| < 1.
inline double hyp2f1_series(double a, double b, double c, double z) {
  double term = 1.0;
  KahanSum sum;
  sum.add(1.0);
  for (long k = 0; k < 1000000; ++k) {
    double kk = static_cast<double>(k);
    term *= (a + kk) * (b + kk) / ((c + kk) * (1.0 + kk)) * z;
    sum.add(term);
    if (std::abs(term) <= 1e-17 * std::abs(sum.sum()) && k > 2) return sum.sum();
  }
  throw convergence_error("2F1 series did not converge", sum.sum(), kInf);
}

}  // namespace detail

// Gauss hypergeometric function on the real domain z < 1 (z <= 0 or |z| < 1).
// Negative arguments are mapped into (0, 1) by the Pfaff transformation
// 2F1(a,b;c;z) = (1-z)^{-a} 2F1(a, c-b; c; z/(z-1)).
inline double hyp2f1(double a, double b, double c, double z) {
  if (detail::is_nonpositive_integer(c))
    throw domain_error("2F1 undefined for nonpositive integer c");
  if (z == 0.0) return 1.0;
  if (z < 0.0) {
    double w = z / (z - 1.0);  // in (0, 1)
    return std::pow(1.0 - z, -a) * detail::hyp2f1_series(a, c - b, c, w);
  }
  if (z < 1.0) return detail::hyp2f1_series(a, b, c, z);
  throw domain_error("2F1 argument z=" + std::to_string(z) + " outside supported domain");
}

inline double hyp2f1(const Hyp2F1Args& args) {
  return hyp2f1(args.a, args.b, args.c, args.z);
}

}  // namespace errbound
