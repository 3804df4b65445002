#pragma once

#include <random>
#include <vector>

#include "errbound/model.hpp"

namespace testutil {

// Random discrete problem with M hypotheses and N symbols; priors and
// likelihood columns drawn from a Dirichlet-like renormalized uniform.
inline errbound::DiscreteProblem random_discrete(std::mt19937_64& rng, std::size_t m,
                                                 std::size_t n) {
  std::uniform_real_distribution<double> uni(0.05, 1.0);
  auto simplex = [&](std::size_t k) {
    std::vector<double> v(k);
    double s = 0.0;
    for (auto& x : v) {
      x = uni(rng);
      s += x;
    }
    for (auto& x : v) x /= s;
    // renormalize exactly so validation at 1e-12 passes
    double s2 = 0.0;
    for (std::size_t i = 0; i + 1 < k; ++i) s2 += v[i];
    v[k - 1] = 1.0 - s2;
    return v;
  };
  auto priors = simplex(m);
  std::vector<std::vector<double>> lik(n, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i) {
    auto col = simplex(n);
    for (std::size_t s = 0; s < n; ++s) lik[s][i] = col[s];
  }
  return errbound::DiscreteProblem(errbound::PriorVector(priors), lik);
}

// Problem whose posteriors are uniform (1/M) at every symbol.
inline errbound::DiscreteProblem uniform_posterior_problem(std::size_t m) {
  std::vector<double> priors(m, 1.0 / static_cast<double>(m));
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < m; ++i) s += priors[i];
  priors[m - 1] = 1.0 - s;
  std::vector<std::vector<double>> lik = {std::vector<double>(m, 0.5),
                                          std::vector<double>(m, 0.5)};
  return errbound::DiscreteProblem(errbound::PriorVector(priors), lik);
}

inline std::vector<double> random_positive_vector(std::mt19937_64& rng, std::size_t n,
                                                  double lo = 0.1, double hi = 2.0) {
  std::uniform_real_distribution<double> uni(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = uni(rng);
  return v;
}

}  // namespace testutil
