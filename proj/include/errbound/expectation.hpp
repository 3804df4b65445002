#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "errbound/common.hpp"
#include "errbound/model.hpp"
#include "errbound/quadrature.hpp"

namespace errbound {

namespace detail {

// n_i = priors-proportional allocation of total MC samples, >= 1 per stratum.
inline std::vector<long> stratum_sizes(const PriorVector& priors, long total) {
  std::vector<long> n(priors.size(), 0);
  for (std::size_t i = 0; i < priors.size(); ++i) {
    if (priors[i] == 0.0) continue;
    n[i] = std::max<long>(1, std::lround(priors[i] * static_cast<double>(total)));
  }
  return n;
}

template <class Problem, class Sampler, class G>
Estimate mc_expect(const Problem& pr, Sampler&& draw, G&& g, const ExpectationConfig& cfg) {
  const auto& priors = pr.priors();
  auto sizes = stratum_sizes(priors, cfg.mc_samples);
  KahanSum value;
  double var = 0.0;
  long evals = 0;
  for (std::size_t i = 0; i < priors.size(); ++i) {
    if (sizes[i] == 0) continue;
    Rng rng(derive_seed(cfg.rng_seed, i));
    KahanSum s, s2;
    for (long k = 0; k < sizes[i]; ++k) {
      auto x = draw(i, rng);
      auto post = posterior(pr, x);
      double v = post.defined ? g(x, post) : 0.0;
      if (std::isnan(v))
        throw numerical_error("functional returned NaN during Monte Carlo");
      s.add(v);
      s2.add(v * v);
    }
    evals += sizes[i];
    double n = static_cast<double>(sizes[i]);
    double mean = s.sum() / n;
    double sample_var = std::max(0.0, s2.sum() / n - mean * mean);
    if (sizes[i] > 1) sample_var *= n / (n - 1.0);
    value.add(priors[i] * mean);
    var += priors[i] * priors[i] * sample_var / n;
  }
  Estimate est;
  est.value = value.sum();
  est.std_error = std::sqrt(var);
  est.evaluations = evals;
  est.achieved_tol = *est.std_error;
  return est;
}

}  // namespace detail

// E[g(x, posterior(x))] over the marginal law of x. g must be finite wherever
// the marginal is positive; zero-marginal points carry no weight.
template <class G>
Estimate expect(const DiscreteProblem& pr, G&& g, const ExpectationConfig& cfg = {}) {
  cfg.validate();
  Method m = cfg.method == Method::Auto ? Method::ExactDiscrete : cfg.method;
  if (m == Method::Quadrature)
    throw unsupported_error("quadrature is not applicable to discrete problems");
  if (m == Method::MonteCarlo) {
    auto draw = [&pr](std::size_t i, Rng& rng) {
      double u = detail::uniform01(rng);
      double acc = 0.0;
      for (std::size_t n = 0; n + 1 < pr.num_symbols(); ++n) {
        acc += pr.likelihood(n, i);
        if (u < acc) return n;
      }
      return pr.num_symbols() - 1;
    };
    return detail::mc_expect(pr, draw, g, cfg);
  }
  detail::KahanSum s;
  long evals = 0;
  for (std::size_t n = 0; n < pr.num_symbols(); ++n) {
    auto post = posterior(pr, n);
    if (!post.defined) continue;
    double v = g(n, post);
    if (std::isnan(v))
      throw numerical_error("functional returned NaN at symbol " + std::to_string(n));
    s.add(post.marginal * v);
    ++evals;
  }
  Estimate est;
  est.value = s.sum();
  est.evaluations = evals;
  est.achieved_tol = 0.0;
  return est;
}

template <class G>
Estimate expect(const ContinuousProblem& pr, G&& g, const ExpectationConfig& cfg = {}) {
  cfg.validate();
  Method m = cfg.method == Method::Auto ? Method::Quadrature : cfg.method;
  if (m == Method::ExactDiscrete)
    throw unsupported_error("exact summation is not applicable to continuous problems");
  if (m == Method::MonteCarlo) {
    auto draw = [&pr](std::size_t i, Rng& rng) {
      const auto& d = pr.density(i);
      if (!d.sampler)
        throw unsupported_error("density " + d.name + " has no sampler");
      return d.sampler(rng);
    };
    return detail::mc_expect(pr, draw, g, cfg);
  }
  Interval w = pr.integration_window(cfg.truncation_mass);
  auto integrand = [&](double x) {
    auto post = posterior(pr, x);
    if (!post.defined) return 0.0;
    return post.marginal * g(x, post);
  };
  auto r = integrate(integrand, w.lo, w.hi, cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions);
  Estimate est;
  est.value = r.value;
  est.evaluations = r.evaluations;
  est.achieved_tol = r.error_estimate;
  return est;
}

// E[g(x, posterior(x)) | theta_i]: expectation under the i-th conditional law.
template <class G>
Estimate expect_conditional(const DiscreteProblem& pr, std::size_t hyp, G&& g,
                            const ExpectationConfig& cfg = {}) {
  cfg.validate();
  if (hyp >= pr.num_hypotheses()) throw domain_error("hypothesis index out of range");
  detail::KahanSum s;
  long evals = 0;
  for (std::size_t n = 0; n < pr.num_symbols(); ++n) {
    double w = pr.likelihood(n, hyp);
    if (w == 0.0) continue;
    auto post = posterior(pr, n);
    double v = g(n, post);
    if (std::isnan(v))
      throw numerical_error("functional returned NaN at symbol " + std::to_string(n));
    s.add(w * v);
    ++evals;
  }
  Estimate est;
  est.value = s.sum();
  est.evaluations = evals;
  return est;
}

template <class G>
Estimate expect_conditional(const ContinuousProblem& pr, std::size_t hyp, G&& g,
                            const ExpectationConfig& cfg = {}) {
  cfg.validate();
  if (hyp >= pr.num_hypotheses()) throw domain_error("hypothesis index out of range");
  Interval w = pr.integration_window(cfg.truncation_mass);
  auto integrand = [&](double x) {
    double fx = pr.density(hyp).pdf(x);
    if (fx == 0.0) return 0.0;
    auto post = posterior(pr, x);
    return fx * g(x, post);
  };
  auto r = integrate(integrand, w.lo, w.hi, cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions);
  Estimate est;
  est.value = r.value;
  est.evaluations = r.evaluations;
  est.achieved_tol = r.error_estimate;
  return est;
}

// i.i.d. draws from the marginal: hypothesis by priors, then observation.
inline std::vector<std::size_t> sample_marginal(const DiscreteProblem& pr, long n,
                                                std::uint64_t seed) {
  std::vector<std::size_t> out;
  out.reserve(static_cast<std::size_t>(std::max<long>(0, n)));
  Rng rng(detail::derive_seed(seed, 0x5a));
  for (long k = 0; k < n; ++k) {
    double u = detail::uniform01(rng);
    std::size_t i = 0;
    double acc = 0.0;
    for (; i + 1 < pr.num_hypotheses(); ++i) {
      acc += pr.priors()[i];
      if (u < acc) break;
    }
    double v = detail::uniform01(rng);
    std::size_t sym = pr.num_symbols() - 1;
    double a2 = 0.0;
    for (std::size_t s = 0; s + 1 < pr.num_symbols(); ++s) {
      a2 += pr.likelihood(s, i);
      if (v < a2) {
        sym = s;
        break;
      }
    }
    out.push_back(sym);
  }
  return out;
}

inline std::vector<double> sample_marginal(const ContinuousProblem& pr, long n,
                                           std::uint64_t seed) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max<long>(0, n)));
  Rng rng(detail::derive_seed(seed, 0x5a));
  for (long k = 0; k < n; ++k) {
    double u = detail::uniform01(rng);
    std::size_t i = 0;
    double acc = 0.0;
    for (; i + 1 < pr.num_hypotheses(); ++i) {
      acc += pr.priors()[i];
      if (u < acc) break;
    }
    const auto& d = pr.density(i);
    if (!d.sampler) throw unsupported_error("density " + d.name + " has no sampler");
    out.push_back(d.sampler(rng));
  }
  return out;
}

// Minimum probability of error of the MAP detector: 1 - E[max_i P(theta_i|x)].
template <class Problem>
Estimate map_error(const Problem& pr, const ExpectationConfig& cfg = {}) {
  auto est = expect(
      pr, [](auto, const PosteriorVector& post) { return post.max(); }, cfg);
  est.value = 1.0 - est.value;
  return est;
}

}  // namespace errbound
