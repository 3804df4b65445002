#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "errbound/common.hpp"
#include "errbound/expectation.hpp"
#include "errbound/model.hpp"

namespace errbound {

namespace detail {

// (sum_i P_i^{1/(1-p)})^{1-p}; 0 by continuity when some posterior is 0.
inline double class1_integrand(const std::vector<double>& post, double p) {
  double lps = log_power_sum(post, 1.0 / (1.0 - p));
  if (lps == kInf) return 0.0;
  return std::exp((1.0 - p) * lps);
}

// (sum_i P_i^{p/(p-1)})^{(p-1)/p}; zero posteriors contribute nothing.
inline double class2_integrand(const std::vector<double>& post, double p) {
  double lps = log_power_sum(post, p / (p - 1.0));
  return std::exp(((p - 1.0) / p) * lps);
}

}  // namespace detail

// Per-point value of the first tightest-subclass bound for a binary problem
// with posterior (pi, 1-pi).
inline double binary_pointwise_b1(double pi, PExponent p) {
  return detail::class1_integrand({pi, 1.0 - pi}, p.value());
}

// Per-point value of the second tightest-subclass bound, 1 - ||(pi,1-pi)||_{p/(p-1)}.
inline double binary_pointwise_b2(double pi, PExponent p) {
  return 1.0 - detail::class2_integrand({pi, 1.0 - pi}, p.value());
}

// First tightest-subclass lower bound:
// (M-1)^p E[(sum_i P(theta_i|x)^{1/(1-p)})^{1-p}].
template <class Problem>
Estimate bound_b1(const Problem& pr, PExponent p, const ExpectationConfig& cfg = {}) {
  const double pv = p.value();
  auto est = expect(
      pr,
      [pv](auto, const PosteriorVector& post) {
        return detail::class1_integrand(post.values, pv);
      },
      cfg);
  est.value *= std::pow(static_cast<double>(pr.num_hypotheses()) - 1.0, pv);
  return est;
}

// Second tightest-subclass lower bound:
// 1 - E[(sum_i P(theta_i|x)^{p/(p-1)})^{(p-1)/p}].
template <class Problem>
Estimate bound_b2(const Problem& pr, PExponent p, const ExpectationConfig& cfg = {}) {
  const double pv = p.value();
  auto est = expect(
      pr,
      [pv](auto, const PosteriorVector& post) {
        return detail::class2_integrand(post.values, pv);
      },
      cfg);
  est.value = 1.0 - est.value;
  return est;
}

// Jensen simplification of bound_b1: (M-1)^p E[sum_i P^{1/(1-p)}]^{1-p}.
// A diverging inner expectation (zero posteriors with positive mass) collapses
// the bound to 0; flagged as degenerate.
template <class Problem>
Estimate bound_jb1(const Problem& pr, PExponent p, const ExpectationConfig& cfg = {}) {
  const double pv = p.value();
  Estimate inner;
  try {
    inner = expect(
        pr,
        [pv](auto, const PosteriorVector& post) {
          double lps = detail::log_power_sum(post.values, 1.0 / (1.0 - pv));
          return std::exp(lps);
        },
        cfg);
  } catch (const nonfinite_error& e) {
    if (e.value > 0) {
      Estimate est;
      est.value = 0.0;
      est.degenerate = true;
      return est;
    }
    throw;
  }
  Estimate est = inner;
  if (!std::isfinite(inner.value)) {
    est.value = 0.0;
    est.degenerate = true;
    return est;
  }
  est.value = std::pow(static_cast<double>(pr.num_hypotheses()) - 1.0, pv) *
              std::pow(inner.value, 1.0 - pv);
  return est;
}

// Jensen simplification of bound_b2: 1 - E[sum_i P^{p/(p-1)}]^{(p-1)/p}.
template <class Problem>
Estimate bound_jb2(const Problem& pr, PExponent p, const ExpectationConfig& cfg = {}) {
  const double pv = p.value();
  auto est = expect(
      pr,
      [pv](auto, const PosteriorVector& post) {
        return std::exp(detail::log_power_sum(post.values, pv / (pv - 1.0)));
      },
      cfg);
  est.value = 1.0 - std::pow(est.value, (pv - 1.0) / pv);
  return est;
}

// General class-1 bound for an arbitrary nonnegative weighting function zeta:
// (M-1)^p E^p[zeta] E^{1-p}[zeta^{p/(p-1)} sum_i P^{1/(1-p)}].
template <class Problem, class Zeta>
Estimate general_bound_zeta1(const Problem& pr, PExponent p, Zeta&& zeta,
                             const ExpectationConfig& cfg = {}) {
  const double pv = p.value();
  auto checked = [&zeta](auto x) {
    double z = zeta(x);
    if (z < 0.0) throw domain_error("zeta negative at an evaluated observation");
    return z;
  };
  auto e1 = expect(pr, [&](auto x, const PosteriorVector&) { return checked(x); }, cfg);
  Estimate e2;
  bool diverged = false;
  try {
    e2 = expect(
        pr,
        [&](auto x, const PosteriorVector& post) {
          double z = checked(x);
          if (z == 0.0) return 0.0;
          double lps = detail::log_power_sum(post.values, 1.0 / (1.0 - pv));
          return std::exp((pv / (pv - 1.0)) * std::log(z) + lps);
        },
        cfg);
  } catch (const nonfinite_error& e) {
    if (e.value > 0)
      diverged = true;
    else
      throw;
  }
  Estimate est = e1;
  est.evaluations += e2.evaluations;
  if (diverged || !std::isfinite(e2.value)) {
    est.value = 0.0;
    est.degenerate = true;
    return est;
  }
  est.value = std::pow(static_cast<double>(pr.num_hypotheses()) - 1.0, pv) *
              std::pow(e1.value, pv) * std::pow(e2.value, 1.0 - pv);
  return est;
}

// General class-2 bound: 1 - E^{1/p}[zeta] E^{(p-1)/p}[zeta^{1/(1-p)} sum_i P^{p/(p-1)}].
template <class Problem, class Zeta>
Estimate general_bound_zeta2(const Problem& pr, PExponent p, Zeta&& zeta,
                             const ExpectationConfig& cfg = {}) {
  const double pv = p.value();
  auto checked = [&zeta](auto x) {
    double z = zeta(x);
    if (z < 0.0) throw domain_error("zeta negative at an evaluated observation");
    return z;
  };
  auto e1 = expect(pr, [&](auto x, const PosteriorVector&) { return checked(x); }, cfg);
  auto e2 = expect(
      pr,
      [&](auto x, const PosteriorVector& post) {
        double z = checked(x);
        double lps = detail::log_power_sum(post.values, pv / (pv - 1.0));
        if (z == 0.0) return kInf;  // zeta^{1/(1-p)} at 0
        return std::exp((1.0 / (1.0 - pv)) * std::log(z) + lps);
      },
      cfg);
  Estimate est = e1;
  est.evaluations += e2.evaluations;
  est.value = 1.0 - std::pow(e1.value, 1.0 / pv) * std::pow(e2.value, (pv - 1.0) / pv);
  return est;
}

// Binary upper bound 2^{p-1} E[(sum_i P^{1/(1-p)})^{1-p}] = 2^{p-1} B_p^(1).
template <class Problem>
Estimate upper_renyi(const Problem& pr, PExponent p, const ExpectationConfig& cfg = {}) {
  if (pr.num_hypotheses() != 2)
    throw unsupported_error("upper_renyi requires a binary problem");
  auto est = bound_b1(pr, p, cfg);
  est.value *= std::pow(2.0, p.value() - 1.0);
  return est;
}

// General-mean-distance upper bound: 1 - M^{(1-p)/p} E[(sum_i P^{p/(p-1)})^{(p-1)/p}].
template <class Problem>
Estimate upper_gmd3(const Problem& pr, PExponent p, const ExpectationConfig& cfg = {}) {
  const double pv = p.value();
  auto est = expect(
      pr,
      [pv](auto, const PosteriorVector& post) {
        return detail::class2_integrand(post.values, pv);
      },
      cfg);
  double m = static_cast<double>(pr.num_hypotheses());
  est.value = 1.0 - std::pow(m, (1.0 - pv) / pv) * est.value;
  return est;
}

// Empirical check of the detector-independence identity on a discrete problem.
// Returns (direct, predicted):
//   class 1: E[|u v_1|]      vs (M-1) E[zeta]
//   class 2: E[|(1-u) v_2|]  vs E[zeta]
// with v_k(x, theta_i) = zeta(x) / P(theta_i|x). Requires strictly positive
// posteriors on every positive-mass point.
inline std::pair<double, double> detector_term_check(
    const DiscreteProblem& pr, const std::function<std::size_t(std::size_t)>& detector,
    const std::function<double(std::size_t)>& zeta, int class_index) {
  if (class_index != 1 && class_index != 2)
    throw domain_error("class index must be 1 or 2");
  detail::KahanSum direct, zsum;
  const std::size_t m = pr.num_hypotheses();
  for (std::size_t n = 0; n < pr.num_symbols(); ++n) {
    auto post = posterior(pr, n);
    if (!post.defined) continue;
    std::size_t dec = detector(n);
    if (dec >= m) throw domain_error("detector decided an invalid hypothesis");
    double z = zeta(n);
    if (z < 0.0) throw domain_error("zeta negative at symbol " + std::to_string(n));
    for (std::size_t i = 0; i < m; ++i) {
      if (post.values[i] <= 0.0)
        throw domain_error("zero posterior on a positive-mass point at symbol " +
                           std::to_string(n));
      bool err = dec != i;
      bool take = (class_index == 1) ? err : !err;
      if (take) direct.add(post.marginal * post.values[i] * (z / post.values[i]));
    }
    zsum.add(post.marginal * z);
  }
  double predicted = (class_index == 1 ? static_cast<double>(m) - 1.0 : 1.0) * zsum.sum();
  return {direct.sum(), predicted};
}

enum class HolderBound { B1, B2, JB1, JB2, UpperRenyi, UpperGmd3 };

inline std::string to_string(HolderBound k) {
  switch (k) {
    case HolderBound::B1: return "b1";
    case HolderBound::B2: return "b2";
    case HolderBound::JB1: return "jb1";
    case HolderBound::JB2: return "jb2";
    case HolderBound::UpperRenyi: return "upper_renyi";
    case HolderBound::UpperGmd3: return "upper_gmd3";
  }
  return "?";
}

template <class Problem>
Estimate evaluate_holder(const Problem& pr, HolderBound kind, PExponent p,
                         const ExpectationConfig& cfg = {}) {
  switch (kind) {
    case HolderBound::B1: return bound_b1(pr, p, cfg);
    case HolderBound::B2: return bound_b2(pr, p, cfg);
    case HolderBound::JB1: return bound_jb1(pr, p, cfg);
    case HolderBound::JB2: return bound_jb2(pr, p, cfg);
    case HolderBound::UpperRenyi: return upper_renyi(pr, p, cfg);
    case HolderBound::UpperGmd3: return upper_gmd3(pr, p, cfg);
  }
  throw domain_error("unknown bound kind");
}

struct SweepPoint {
  double p = 0.0;
  Estimate estimate;
  bool ok = false;
  std::string error;
};

// Evaluates one bound over a grid of p values; per-point failures are recorded
// in the output rather than thrown.
template <class Problem>
std::vector<SweepPoint> p_sweep(const Problem& pr, HolderBound kind,
                                const std::vector<PExponent>& grid,
                                const ExpectationConfig& cfg = {}) {
  if (grid.empty()) throw domain_error("p grid must be nonempty");
  std::vector<SweepPoint> out;
  out.reserve(grid.size());
  for (const auto& p : grid) {
    SweepPoint pt;
    pt.p = p.value();
    try {
      pt.estimate = evaluate_holder(pr, kind, p, cfg);
      pt.ok = true;
    } catch (const error& e) {
      pt.error = e.what();
    }
    out.push_back(std::move(pt));
  }
  return out;
}

}  // namespace errbound
