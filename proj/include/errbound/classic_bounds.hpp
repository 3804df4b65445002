#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "errbound/common.hpp"
#include "errbound/expectation.hpp"
#include "errbound/holder_bounds.hpp"
#include "errbound/model.hpp"

namespace errbound {

enum class ClassicKind {
  Divergence,
  BLB1,
  BLB2,
  FDiv,
  Harmonic,
  JAlpha,
  GaussSin,
  ATLB,
  Bayes1,
  Bayes2,
  Bayes3,
  Quad,
  Matusita,
  GMD1,
  GMD2,
};

// Selectable classic lower bound. alpha/beta/power are used only by the kinds
// that take parameters.
struct ClassicBoundSpec {
  ClassicKind kind;
  double alpha = 0.0;
  double beta = 0.0;
  double power = 0.0;  // L parameter of FDiv

  static ClassicBoundSpec simple(ClassicKind k) { return ClassicBoundSpec{k}; }
  static ClassicBoundSpec fdiv(double L) {
    ClassicBoundSpec s{ClassicKind::FDiv};
    s.power = L;
    return s;
  }
  static ClassicBoundSpec jalpha(double alpha) {
    ClassicBoundSpec s{ClassicKind::JAlpha};
    s.alpha = alpha;
    return s;
  }
  static ClassicBoundSpec atlb(double alpha) {
    ClassicBoundSpec s{ClassicKind::ATLB};
    s.alpha = alpha;
    return s;
  }
  static ClassicBoundSpec gmd1(double alpha, double beta) {
    ClassicBoundSpec s{ClassicKind::GMD1};
    s.alpha = alpha;
    s.beta = beta;
    return s;
  }
  static ClassicBoundSpec gmd2(double alpha, double beta) {
    ClassicBoundSpec s{ClassicKind::GMD2};
    s.alpha = alpha;
    s.beta = beta;
    return s;
  }
};

inline std::string to_string(ClassicKind k) {
  switch (k) {
    case ClassicKind::Divergence: return "Divergence";
    case ClassicKind::BLB1: return "BLB1";
    case ClassicKind::BLB2: return "BLB2";
    case ClassicKind::FDiv: return "FDiv";
    case ClassicKind::Harmonic: return "Harmonic";
    case ClassicKind::JAlpha: return "JAlpha";
    case ClassicKind::GaussSin: return "GaussSin";
    case ClassicKind::ATLB: return "ATLB";
    case ClassicKind::Bayes1: return "Bayes1";
    case ClassicKind::Bayes2: return "Bayes2";
    case ClassicKind::Bayes3: return "Bayes3";
    case ClassicKind::Quad: return "Quad";
    case ClassicKind::Matusita: return "Matusita";
    case ClassicKind::GMD1: return "GMD1";
    case ClassicKind::GMD2: return "GMD2";
  }
  return "?";
}

namespace detail {

inline bool classic_needs_binary(ClassicKind k) {
  switch (k) {
    case ClassicKind::Divergence:
    case ClassicKind::BLB1:
    case ClassicKind::BLB2:
    case ClassicKind::FDiv:
    case ClassicKind::Harmonic:
    case ClassicKind::JAlpha:
    case ClassicKind::GaussSin:
    case ClassicKind::ATLB:
      return true;
    default:
      return false;
  }
}

inline void validate_classic(const ClassicBoundSpec& s, std::size_t m) {
  if (classic_needs_binary(s.kind) && m != 2)
    throw unsupported_error(to_string(s.kind) + " requires a binary problem");
  switch (s.kind) {
    case ClassicKind::FDiv:
      if (!(s.power >= 1.0)) throw domain_error("FDiv requires L >= 1");
      break;
    case ClassicKind::JAlpha:
      // alpha < 1 flips the Lyapunov inequality and the formula stops being a
      // lower bound, so only alpha >= 1 is accepted.
      if (!(s.alpha >= 1.0)) throw domain_error("JAlpha requires alpha >= 1");
      break;
    case ClassicKind::ATLB:
      if (!(s.alpha > 0.0)) throw domain_error("ATLB requires alpha > 0");
      break;
    case ClassicKind::GMD1:
      if (!(s.alpha > 0.0 && s.beta > 1.0 && 1.0 / s.alpha <= s.beta))
        throw domain_error("GMD1 requires alpha > 0, beta > 1, 1/alpha <= beta");
      break;
    case ClassicKind::GMD2:
      if (!(s.alpha > 0.0 && s.beta > 1.0 && s.beta <= 1.0 / s.alpha))
        throw domain_error("GMD2 requires alpha > 0, 1 < beta <= 1/alpha");
      break;
    default:
      break;
  }
}

inline constexpr double kGaussSinAlpha = 1.8063;
inline constexpr double kGaussSinScale = 0.395;

}  // namespace detail

template <class Problem>
Estimate evaluate_classic(const Problem& pr, const ClassicBoundSpec& spec,
                          const ExpectationConfig& cfg = {}) {
  detail::validate_classic(spec, pr.num_hypotheses());
  const double m = static_cast<double>(pr.num_hypotheses());
  switch (spec.kind) {
    case ClassicKind::Divergence: {
      // J = E[log L | theta_1] - E[log L | theta_2], bound = (1/8) e^{-J/2}.
      bool degenerate = false;
      auto log_lr = [&degenerate, &pr](auto, const PosteriorVector& post) {
        double num = post.values[0] * pr.priors()[1];
        double den = post.values[1] * pr.priors()[0];
        if (num == 0.0 || den == 0.0) {
          degenerate = true;
          return 0.0;
        }
        return std::log(num / den);
      };
      auto e1 = expect_conditional(pr, 0, log_lr, cfg);
      auto e2 = expect_conditional(pr, 1, log_lr, cfg);
      Estimate est = e1;
      est.evaluations += e2.evaluations;
      if (degenerate) {
        est.value = 0.0;
        est.degenerate = true;
        return est;
      }
      est.value = 0.125 * std::exp(-0.5 * (e1.value - e2.value));
      return est;
    }
    case ClassicKind::BLB1: {
      auto est = expect(
          pr,
          [](auto, const PosteriorVector& p) {
            return std::sqrt(p.values[0] * p.values[1]);
          },
          cfg);
      double denom = 8.0 * pr.priors()[0] * pr.priors()[1];
      if (denom == 0.0) throw domain_error("BLB1 undefined for degenerate priors");
      est.value = est.value * est.value / denom;
      return est;
    }
    case ClassicKind::BLB2: {
      auto est = expect(
          pr,
          [](auto, const PosteriorVector& p) {
            return std::sqrt(p.values[0] * p.values[1]);
          },
          cfg);
      est.value = 0.5 - 0.5 * std::sqrt(std::max(0.0, 1.0 - 4.0 * est.value * est.value));
      return est;
    }
    case ClassicKind::FDiv: {
      const double L = spec.power;
      auto est = expect(
          pr,
          [L](auto, const PosteriorVector& p) {
            return std::pow(4.0 * p.values[0] * p.values[1], L);
          },
          cfg);
      est.value = 0.5 - 0.5 * std::sqrt(std::max(0.0, 1.0 - est.value));
      return est;
    }
    case ClassicKind::Harmonic:
      {
        auto est = expect(
            pr,
            [](auto, const PosteriorVector& p) { return p.values[0] * p.values[1]; },
            cfg);
        return est;
      }
    case ClassicKind::JAlpha: {
      const double a = spec.alpha;
      auto est = expect(
          pr,
          [a](auto, const PosteriorVector& p) {
            double d = std::abs(p.values[0] - p.values[1]);
            return a == 1.0 ? d : std::pow(d, a);
          },
          cfg);
      est.value = 0.5 - 0.5 * (a == 1.0 ? est.value : std::pow(est.value, 1.0 / a));
      return est;
    }
    case ClassicKind::GaussSin: {
      auto est = expect(
          pr,
          [](auto, const PosteriorVector& p) {
            double d = p.values[0] - 0.5;
            return std::sin(3.141592653589793 * p.values[0]) *
                   std::exp(-detail::kGaussSinAlpha * d * d);
          },
          cfg);
      est.value *= detail::kGaussSinScale;
      return est;
    }
    case ClassicKind::ATLB: {
      const double a = spec.alpha;
      const double num = std::log1p(std::exp(-a));
      auto est = expect(
          pr,
          [a, num](auto, const PosteriorVector& p) {
            double lse = detail::log_power_sum({std::exp(-a * p.values[0]),
                                                std::exp(-a * p.values[1])},
                                               1.0);
            return num - lse;
          },
          cfg);
      est.value /= a;
      return est;
    }
    case ClassicKind::Bayes1: {
      auto est = expect(
          pr,
          [](auto, const PosteriorVector& p) {
            double s = 0.0;
            for (double v : p.values) s += v * v;
            return s;
          },
          cfg);
      double rad = (m * est.value - 1.0) / (m - 1.0);
      est.value = (m - 1.0) / m * (1.0 - std::sqrt(std::max(0.0, rad)));
      return est;
    }
    case ClassicKind::Bayes2: {
      auto est = expect(
          pr,
          [](auto, const PosteriorVector& p) {
            double s = 0.0;
            for (double v : p.values) s += v * v;
            return s;
          },
          cfg);
      est.value = 1.0 - std::sqrt(est.value);
      return est;
    }
    case ClassicKind::Bayes3: {
      auto est = expect(
          pr,
          [](auto, const PosteriorVector& p) {
            double s = 0.0;
            for (double v : p.values) s += v * v;
            return std::sqrt(s);
          },
          cfg);
      est.value = 1.0 - est.value;
      return est;
    }
    case ClassicKind::Quad: {
      auto est = expect(
          pr,
          [](auto, const PosteriorVector& p) {
            double s = 0.0;
            for (double v : p.values) s += v * v;
            return s;
          },
          cfg);
      est.value = 0.5 - 0.5 * est.value;
      return est;
    }
    case ClassicKind::Matusita: {
      const double inv_m = 1.0 / m;
      auto est = expect(
          pr,
          [inv_m](auto, const PosteriorVector& p) {
            double lg = 0.0;
            for (double v : p.values) {
              if (v == 0.0) return 0.0;
              lg += std::log(v);
            }
            return std::exp(inv_m * lg);
          },
          cfg);
      est.value = (m - 1.0) / std::pow(m, m - 1.0) * std::pow(est.value, m);
      return est;
    }
    case ClassicKind::GMD1: {
      const double a = spec.alpha, b = spec.beta;
      auto est = expect(
          pr,
          [a, b](auto, const PosteriorVector& p) {
            return std::exp(a * detail::log_power_sum(p.values, b));
          },
          cfg);
      est.value = 1.0 - std::pow(est.value, 1.0 / (a * b));
      return est;
    }
    case ClassicKind::GMD2: {
      const double a = spec.alpha, b = spec.beta;
      auto est = expect(
          pr,
          [a, b](auto, const PosteriorVector& p) {
            return std::exp(a * detail::log_power_sum(p.values, b));
          },
          cfg);
      est.value = 1.0 - est.value;
      return est;
    }
  }
  throw domain_error("unknown classic bound kind");
}

struct ComparisonRow {
  std::string name;
  std::string params;
  bool ok = false;
  Estimate estimate;
  std::string error;
};

namespace detail {

inline std::string format_param(const char* key, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s=%g", key, v);
  return buf;
}

}  // namespace detail

// Evaluates map_error, the Holder bounds at each requested p, and every classic
// spec; rows sorted by descending value, failed entries last.
template <class Problem>
std::vector<ComparisonRow> compare_all(const Problem& pr,
                                       const std::vector<ClassicBoundSpec>& specs,
                                       const std::vector<PExponent>& p_values,
                                       const ExpectationConfig& cfg = {}) {
  std::vector<ComparisonRow> rows;
  auto push = [&rows](std::string name, std::string params, auto&& eval) {
    ComparisonRow row;
    row.name = std::move(name);
    row.params = std::move(params);
    try {
      row.estimate = eval();
      row.ok = true;
    } catch (const error& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  };
  push("map", "", [&] { return map_error(pr, cfg); });
  for (const auto& p : p_values) {
    push("b1", detail::format_param("p", p.value()), [&] { return bound_b1(pr, p, cfg); });
    push("b2", detail::format_param("p", p.value()), [&] { return bound_b2(pr, p, cfg); });
  }
  for (const auto& s : specs) {
    std::string params;
    if (s.kind == ClassicKind::FDiv) params = detail::format_param("L", s.power);
    if (s.kind == ClassicKind::JAlpha || s.kind == ClassicKind::ATLB)
      params = detail::format_param("alpha", s.alpha);
    if (s.kind == ClassicKind::GMD1 || s.kind == ClassicKind::GMD2)
      params = detail::format_param("alpha", s.alpha) + " " +
               detail::format_param("beta", s.beta);
    push("classic:" + to_string(s.kind), params, [&] { return evaluate_classic(pr, s, cfg); });
  }
  std::stable_sort(rows.begin(), rows.end(), [](const ComparisonRow& a, const ComparisonRow& b) {
    if (a.ok != b.ok) return a.ok;
    return a.estimate.value > b.estimate.value;
  });
  return rows;
}

}  // namespace errbound
