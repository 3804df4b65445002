#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "errbound/common.hpp"
#include "errbound/distributions.hpp"
#include "errbound/quadrature.hpp"

namespace errbound {

// A-priori probabilities of the M hypotheses.
class PriorVector {
public:
  explicit PriorVector(std::vector<double> weights) : w_(std::move(weights)) {
    if (w_.size() < 2) throw domain_error("need at least 2 hypotheses");
    double s = 0.0;
    for (double w : w_) {
      if (w < 0.0) throw domain_error("priors must be nonnegative");
      s += w;
    }
    if (std::abs(s - 1.0) > 1e-12) throw domain_error("priors must sum to 1");
  }
  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  const std::vector<double>& weights() const { return w_; }

private:
  std::vector<double> w_;
};

// Posterior probabilities P(theta_i | x) at one observation point, together
// with the marginal mass/density of x. defined == false flags a zero-marginal
// point; such points carry no expectation weight and must be skipped.
struct PosteriorVector {
  std::vector<double> values;
  double marginal = 0.0;
  bool defined = false;

  double max() const { return *std::max_element(values.begin(), values.end()); }
};

// Finite-alphabet hypothesis testing problem. likelihoods[n][i] = P(x_n | theta_i).
class DiscreteProblem {
public:
  using observation_type = std::size_t;

  DiscreteProblem(PriorVector priors, std::vector<std::vector<double>> likelihoods,
                  std::vector<std::string> labels = {})
      : priors_(std::move(priors)),
        lik_(std::move(likelihoods)),
        labels_(std::move(labels)) {
    const std::size_t m = priors_.size();
    if (lik_.empty()) throw domain_error("alphabet must be nonempty");
    for (const auto& row : lik_) {
      if (row.size() != m) throw domain_error("likelihood row size must equal M");
      for (double v : row)
        if (v < 0.0) throw domain_error("likelihoods must be nonnegative");
    }
    for (std::size_t i = 0; i < m; ++i) {
      double s = 0.0;
      for (const auto& row : lik_) s += row[i];
      if (std::abs(s - 1.0) > 1e-12)
        throw domain_error("likelihood column " + std::to_string(i) + " must sum to 1");
    }
    if (labels_.empty()) {
      labels_.reserve(lik_.size());
      for (std::size_t n = 0; n < lik_.size(); ++n) labels_.push_back("x" + std::to_string(n));
    }
    if (labels_.size() != lik_.size())
      throw domain_error("label count must equal alphabet size");
  }

  const PriorVector& priors() const { return priors_; }
  std::size_t num_hypotheses() const { return priors_.size(); }
  std::size_t num_symbols() const { return lik_.size(); }
  double likelihood(std::size_t n, std::size_t i) const { return lik_[n][i]; }
  const std::vector<std::string>& labels() const { return labels_; }

private:
  PriorVector priors_;
  std::vector<std::vector<double>> lik_;
  std::vector<std::string> labels_;
};

// Scalar-observation hypothesis testing problem with one density per hypothesis.
class ContinuousProblem {
public:
  using observation_type = double;

  struct Options {
    bool validate_densities = true;
    double validation_tol = 1e-6;
  };

  ContinuousProblem(PriorVector priors, std::vector<Density> densities)
      : ContinuousProblem(std::move(priors), std::move(densities), Options{}) {}

  ContinuousProblem(PriorVector priors, std::vector<Density> densities, Options opts)
      : priors_(std::move(priors)), densities_(std::move(densities)) {
    if (densities_.size() != priors_.size())
      throw domain_error("need one density per hypothesis");
    if (opts.validate_densities) {
      for (const auto& d : densities_) {
        Interval w = density_window(d, 1e-10);
        auto r = integrate(d.pdf, w.lo, w.hi, 1e-9, 1e-8, 4000);
        if (std::abs(r.value - 1.0) > opts.validation_tol)
          throw domain_error("density " + d.name + " integrates to " +
                             std::to_string(r.value) + ", not 1");
      }
    }
  }

  const PriorVector& priors() const { return priors_; }
  std::size_t num_hypotheses() const { return priors_.size(); }
  const Density& density(std::size_t i) const { return densities_[i]; }

  // Interval holding >= 1-mass of every component's probability mass.
  Interval integration_window(double mass) const {
    double per = mass / static_cast<double>(densities_.size());
    Interval out{kInf, -kInf};
    for (std::size_t i = 0; i < densities_.size(); ++i) {
      if (priors_[i] == 0.0) continue;
      Interval w = density_window(densities_[i], per);
      out.lo = std::min(out.lo, w.lo);
      out.hi = std::max(out.hi, w.hi);
    }
    if (!(out.lo < out.hi)) throw domain_error("empty integration window");
    return out;
  }

private:
  PriorVector priors_;
  std::vector<Density> densities_;
};

inline PosteriorVector posterior(const DiscreteProblem& pr, std::size_t n) {
  if (n >= pr.num_symbols()) throw domain_error("symbol index out of range");
  const std::size_t m = pr.num_hypotheses();
  PosteriorVector post;
  post.values.resize(m);
  double marg = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    post.values[i] = pr.priors()[i] * pr.likelihood(n, i);
    marg += post.values[i];
  }
  post.marginal = marg;
  if (marg > 0.0) {
    for (double& v : post.values) v /= marg;
    post.defined = true;
  }
  return post;
}

inline PosteriorVector posterior(const ContinuousProblem& pr, double x) {
  const std::size_t m = pr.num_hypotheses();
  PosteriorVector post;
  post.values.resize(m);
  double marg = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    post.values[i] = pr.priors()[i] * pr.density(i).pdf(x);
    marg += post.values[i];
  }
  post.marginal = marg;
  if (marg > 0.0) {
    for (double& v : post.values) v /= marg;
    post.defined = true;
  }
  return post;
}

}  // namespace errbound
