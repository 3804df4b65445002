#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "errbound/common.hpp"
#include "errbound/distributions.hpp"
#include "errbound/expectation.hpp"
#include "errbound/holder_bounds.hpp"
#include "errbound/model.hpp"

namespace errbound {

// Scalar Bayesian estimation model: prior density of phi and the family of
// observation densities x | phi.
struct EstimationProblem {
  Density prior;
  std::function<Density(double)> conditional;
};

struct ZzlbGrid {
  std::vector<double> h_values;  // strictly increasing, positive
  double phi_lo = 0.0;
  double phi_hi = 0.0;
  double phi_step = 0.0;

  void validate() const {
    if (h_values.empty()) throw domain_error("h grid must be nonempty");
    double prev = 0.0;
    for (double h : h_values) {
      if (!(h > prev)) throw domain_error("h values must be positive and strictly increasing");
      prev = h;
    }
    if (!(phi_step > 0.0)) throw domain_error("phi_step must be positive");
    if (!(phi_lo < phi_hi)) throw domain_error("phi window must be nonempty");
  }
};

// Uniform grid covering the prior support up to tail mass, with h up to the
// window width.
inline ZzlbGrid make_zzlb_grid(const EstimationProblem& est, double phi_step, double h_step,
                               double tail_mass = 1e-8, double h_max = 0.0) {
  if (!(phi_step > 0.0) || !(h_step > 0.0))
    throw domain_error("grid steps must be positive");
  Interval w = density_window(est.prior, tail_mass);
  ZzlbGrid g;
  g.phi_lo = w.lo;
  g.phi_hi = w.hi;
  g.phi_step = phi_step;
  double hmax = h_max > 0.0 ? h_max : (w.hi - w.lo);
  for (double h = h_step; h <= hmax + 1e-12; h += h_step) g.h_values.push_back(h);
  return g;
}

enum class PminKind { ExactMap, B1, B2, Custom };

// Source of the binary detection error term: the exact MAP error or one of the
// lower bounds on it.
struct PminProvider {
  PminKind kind = PminKind::ExactMap;
  double p = 2.0;
  std::function<double(const ContinuousProblem&, const ExpectationConfig&)> custom;

  static PminProvider exact_map() { return PminProvider{}; }
  static PminProvider b1(PExponent p) { return PminProvider{PminKind::B1, p.value(), {}}; }
  static PminProvider b2(PExponent p) { return PminProvider{PminKind::B2, p.value(), {}}; }
};

// Binary detection problem distinguishing phi from phi+h, with priors given by
// the prior-density ratio.
inline ContinuousProblem detection_subproblem(const EstimationProblem& est, double phi,
                                              double h) {
  if (!(h > 0.0)) throw domain_error("offset h must be positive");
  double f0 = est.prior.pdf(phi);
  double f1 = est.prior.pdf(phi + h);
  if (f0 + f1 <= 0.0)
    throw domain_error("prior density vanishes at both points phi=" + std::to_string(phi) +
                       ", phi+h=" + std::to_string(phi + h));
  double p0 = f0 / (f0 + f1);
  ContinuousProblem::Options opts;
  opts.validate_densities = false;
  return ContinuousProblem(PriorVector({p0, 1.0 - p0}),
                           {est.conditional(phi), est.conditional(phi + h)}, opts);
}

// Suffix-max envelope: output[i] = max_{j >= i} input[j].value.
inline std::vector<std::pair<double, double>> valley_fill(
    const std::vector<std::pair<double, double>>& samples) {
  std::vector<std::pair<double, double>> out(samples);
  double running = -kInf;
  for (std::size_t i = out.size(); i-- > 0;) {
    running = std::max(running, out[i].second);
    out[i].second = running;
  }
  return out;
}

struct ZzlbCurve {
  std::vector<double> h;
  std::vector<double> inner;   // inner phi-integral samples
  std::vector<double> filled;  // after valley filling
  Estimate bound;              // final MSE lower bound
};

namespace detail {

inline double pmin_value(const PminProvider& provider, const ContinuousProblem& sub,
                         const ExpectationConfig& cfg, long& evals) {
  Estimate e;
  switch (provider.kind) {
    case PminKind::ExactMap: e = map_error(sub, cfg); break;
    case PminKind::B1: e = bound_b1(sub, PExponent(provider.p), cfg); break;
    case PminKind::B2: e = bound_b2(sub, PExponent(provider.p), cfg); break;
    case PminKind::Custom: {
      if (!provider.custom) throw domain_error("custom provider without a function");
      evals += 1;
      return provider.custom(sub, cfg);
    }
  }
  evals += e.evaluations;
  return e.value;
}

}  // namespace detail

// Discretized extended ZZLB:
//   (1/2) Int V{ Int (f(phi) + f(phi+h)) Pmin(phi, phi+h) dphi } h dh
// with trapezoidal rules on both axes and valley filling between them.
inline ZzlbCurve zzlb_curve(const EstimationProblem& est, const PminProvider& provider,
                            const ZzlbGrid& grid, const ExpectationConfig& cfg = {}) {
  grid.validate();
  cfg.validate();
  long evals = 0;
  ZzlbCurve curve;
  curve.h = grid.h_values;
  curve.inner.reserve(grid.h_values.size());
  for (double h : grid.h_values) {
    detail::KahanSum acc;
    long npts = static_cast<long>(std::floor((grid.phi_hi - grid.phi_lo) / grid.phi_step)) + 1;
    for (long k = 0; k < npts; ++k) {
      double phi = grid.phi_lo + static_cast<double>(k) * grid.phi_step;
      double f0 = est.prior.pdf(phi);
      double f1 = est.prior.pdf(phi + h);
      if (f0 + f1 <= 0.0) continue;
      double pmin;
      try {
        auto sub = detection_subproblem(est, phi, h);
        pmin = detail::pmin_value(provider, sub, cfg, evals);
      } catch (const error& e) {
        throw numerical_error("provider failed at (phi=" + std::to_string(phi) +
                              ", h=" + std::to_string(h) + "): " + e.what());
      }
      double weight = (k == 0 || k == npts - 1) ? 0.5 : 1.0;  // trapezoid
      acc.add(weight * (f0 + f1) * pmin);
    }
    curve.inner.push_back(acc.sum() * grid.phi_step);
  }
  std::vector<std::pair<double, double>> samples;
  samples.reserve(curve.h.size());
  for (std::size_t i = 0; i < curve.h.size(); ++i)
    samples.emplace_back(curve.h[i], curve.inner[i]);
  auto filled = valley_fill(samples);
  curve.filled.reserve(filled.size());
  for (const auto& s : filled) curve.filled.push_back(s.second);
  // (1/2) Int g(h) h dh with g(0) h = 0 at the left end
  detail::KahanSum outer;
  double prev_h = 0.0, prev_g = 0.0;
  for (std::size_t i = 0; i < curve.h.size(); ++i) {
    double hi = curve.h[i];
    double gi = curve.filled[i] * hi;
    outer.add(0.5 * (prev_g + gi) * (hi - prev_h));
    prev_h = hi;
    prev_g = gi;
  }
  curve.bound.value = 0.5 * outer.sum();
  curve.bound.evaluations = evals;
  return curve;
}

inline Estimate zzlb(const EstimationProblem& est, const PminProvider& provider,
                     const ZzlbGrid& grid, const ExpectationConfig& cfg = {}) {
  return zzlb_curve(est, provider, grid, cfg).bound;
}

// C_p^(1) / C_p^(2): the ZZLB with the detection error replaced by the
// corresponding tightest-subclass lower bound.
inline Estimate c_bound(const EstimationProblem& est, PExponent p, int which,
                        const ZzlbGrid& grid, const ExpectationConfig& cfg = {}) {
  if (which != 1 && which != 2) throw domain_error("which must be 1 or 2");
  return zzlb(est, which == 1 ? PminProvider::b1(p) : PminProvider::b2(p), grid, cfg);
}

// x = phi + noise with Gaussian prior N(0, sigma_phi^2) and noise N(0, sigma_n^2).
inline EstimationProblem linear_gaussian_model(double sigma_phi, double sigma_n) {
  EstimationProblem est;
  est.prior = gaussian_density(0.0, sigma_phi);
  est.conditional = [sigma_n](double phi) { return gaussian_density(phi, sigma_n); };
  return est;
}

}  // namespace errbound
