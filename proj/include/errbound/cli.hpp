#pragma once

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "errbound/classic_bounds.hpp"
#include "errbound/common.hpp"
#include "errbound/expectation.hpp"
#include "errbound/holder_bounds.hpp"
#include "errbound/hyp2f1.hpp"
#include "errbound/model.hpp"
#include "errbound/problem_spec.hpp"
#include "errbound/zzlb.hpp"

namespace errbound {
namespace cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

// 12 significant digits, '.' decimal point, locale independent.
inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct Options {
  std::optional<std::uint64_t> seed;
  std::string method;
  std::optional<double> tol;
  std::string axis;
  std::string grid;  // lo:hi:n
  std::string provider = "exact-map";
  double p = 2.0;
  double phi_step = 0.1;
  double h_step = 0.2;
  double h_max = 0.0;
};

namespace detail {

inline void apply_options(const Options& opt, ExpectationConfig& cfg) {
  if (opt.seed) cfg.rng_seed = *opt.seed;
  if (opt.tol) {
    cfg.abs_tol = *opt.tol;
    cfg.rel_tol = *opt.tol;
  }
  if (!opt.method.empty()) {
    if (opt.method == "exact-discrete")
      cfg.method = Method::ExactDiscrete;
    else if (opt.method == "quadrature")
      cfg.method = Method::Quadrature;
    else if (opt.method == "monte-carlo")
      cfg.method = Method::MonteCarlo;
    else
      throw domain_error("unknown method '" + opt.method + "'");
  }
}

inline std::vector<double> parse_grid(const std::string& s) {
  auto parts = errbound::detail::split(s, ':');
  if (parts.size() != 3) throw domain_error("--grid expects lo:hi:n");
  double lo = errbound::detail::parse_number(parts[0], 0);
  double hi = errbound::detail::parse_number(parts[1], 0);
  long n = static_cast<long>(errbound::detail::parse_number(parts[2], 0));
  if (n < 1 || hi < lo) throw domain_error("invalid --grid range");
  std::vector<double> out;
  if (n == 1) {
    out.push_back(lo);
    return out;
  }
  for (long i = 0; i < n; ++i)
    out.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
  return out;
}

// Splits trailing CLI tokens into example parameters (leading key=value) and
// bound requests (name followed by key=value parameters).
inline void parse_tokens(const std::vector<std::string>& tokens,
                         std::map<std::string, double>& example_params,
                         std::vector<BoundRequest>& bounds) {
  bool in_bounds = false;
  for (const auto& tok : tokens) {
    std::size_t eq = tok.find('=');
    if (eq == std::string::npos) {
      bounds.push_back(BoundRequest{tok, {}});
      in_bounds = true;
    } else if (!in_bounds) {
      example_params[tok.substr(0, eq)] =
          errbound::detail::parse_number(tok.substr(eq + 1), 0);
    } else {
      bounds.back().params[tok.substr(0, eq)] =
          errbound::detail::parse_number(tok.substr(eq + 1), 0);
    }
  }
}

inline ParsedSpec load_source(const std::string& source,
                              const std::map<std::string, double>& example_params) {
  if (source.rfind("example:", 0) == 0)
    return builtin_example(source.substr(8), example_params);
  if (!example_params.empty())
    throw domain_error("example parameters are only valid with example: sources");
  return parse_spec_file(source);
}

inline PExponent request_p(const BoundRequest& req) {
  if (req.has("q")) return PExponent::from_q(req.param("q", 2.0));
  return PExponent(req.param("p", 2.0));
}

inline ClassicBoundSpec classic_from_request(const BoundRequest& req) {
  std::string name = req.name.substr(8);
  ClassicBoundSpec s{ClassicKind::Harmonic};
  if (name == "Divergence") s.kind = ClassicKind::Divergence;
  else if (name == "BLB1") s.kind = ClassicKind::BLB1;
  else if (name == "BLB2") s.kind = ClassicKind::BLB2;
  else if (name == "FDiv") s = ClassicBoundSpec::fdiv(req.param("L", 1.0));
  else if (name == "Harmonic") s.kind = ClassicKind::Harmonic;
  else if (name == "JAlpha") s = ClassicBoundSpec::jalpha(req.param("alpha", 1.0));
  else if (name == "GaussSin") s.kind = ClassicKind::GaussSin;
  else if (name == "ATLB") s = ClassicBoundSpec::atlb(req.param("alpha", 1.0));
  else if (name == "Bayes1") s.kind = ClassicKind::Bayes1;
  else if (name == "Bayes2") s.kind = ClassicKind::Bayes2;
  else if (name == "Bayes3") s.kind = ClassicKind::Bayes3;
  else if (name == "Quad") s.kind = ClassicKind::Quad;
  else if (name == "Matusita") s.kind = ClassicKind::Matusita;
  else if (name == "GMD1") s = ClassicBoundSpec::gmd1(req.param("alpha", 1.0), req.param("beta", 2.0));
  else if (name == "GMD2") s = ClassicBoundSpec::gmd2(req.param("alpha", 1.0), req.param("beta", 2.0));
  else throw domain_error("unknown classic bound '" + name + "'");
  return s;
}

template <class Problem>
Estimate evaluate_request(const Problem& pr, const BoundRequest& req,
                          const ExpectationConfig& cfg) {
  if (req.name == "map") return map_error(pr, cfg);
  if (req.name == "b1") return bound_b1(pr, request_p(req), cfg);
  if (req.name == "b2") return bound_b2(pr, request_p(req), cfg);
  if (req.name == "jb1") return bound_jb1(pr, request_p(req), cfg);
  if (req.name == "jb2") return bound_jb2(pr, request_p(req), cfg);
  if (req.name == "upper_renyi") return upper_renyi(pr, request_p(req), cfg);
  if (req.name == "upper_gmd3") return upper_gmd3(pr, request_p(req), cfg);
  if (req.name.rfind("classic:", 0) == 0)
    return evaluate_classic(pr, classic_from_request(req), cfg);
  throw domain_error("unknown bound '" + req.name + "'");
}

inline Estimate evaluate_request(const ParsedSpec& spec, const BoundRequest& req,
                                 const ExpectationConfig& cfg) {
  if (spec.discrete) return evaluate_request(*spec.discrete, req, cfg);
  if (spec.continuous) return evaluate_request(*spec.continuous, req, cfg);
  throw domain_error("spec contains no hypothesis problem");
}

inline std::string params_string(const BoundRequest& req) {
  std::string out;
  for (const auto& [k, v] : req.params) {
    if (!out.empty()) out += " ";
    out += k + "=" + fmt(v);
  }
  return out;
}

}  // namespace detail

// eval: one CSV row per requested bound.
inline int cmd_eval(const std::string& source, const std::vector<std::string>& tokens,
                    const Options& opt, std::ostream& out, std::ostream& err) {
  ParsedSpec spec;
  try {
    std::map<std::string, double> example_params;
    std::vector<BoundRequest> extra;
    detail::parse_tokens(tokens, example_params, extra);
    spec = detail::load_source(source, example_params);
    for (auto& b : extra) spec.bounds.push_back(std::move(b));
    detail::apply_options(opt, spec.config);
    if (!spec.has_problem()) throw domain_error("spec contains no hypothesis problem");
    if (spec.bounds.empty()) throw domain_error("no bounds requested");
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  out << "name,params,value,std_error,evaluations\n";
  for (const auto& req : spec.bounds) {
    try {
      Estimate est = detail::evaluate_request(spec, req, spec.config);
      out << req.name << "," << detail::params_string(req) << "," << fmt(est.value) << ","
          << (est.std_error ? fmt(*est.std_error) : "") << "," << est.evaluations << "\n";
    } catch (const error& e) {
      err << "error evaluating " << req.name << ": " << e.what() << "\n";
      return kExitNumerical;
    }
  }
  return kExitOk;
}

// sweep: BoundCurve CSV over p, q, lambda2, alpha, or the fixed-posterior axis.
inline int cmd_sweep(const std::string& source, const std::vector<std::string>& tokens,
                     const Options& opt, std::ostream& out, std::ostream& err) {
  ParsedSpec spec;
  std::vector<double> grid;
  std::map<std::string, double> example_params;
  try {
    std::vector<BoundRequest> extra;
    detail::parse_tokens(tokens, example_params, extra);
    spec = detail::load_source(source, example_params);
    for (auto& b : extra) spec.bounds.push_back(std::move(b));
    detail::apply_options(opt, spec.config);
    if (opt.axis.empty()) throw domain_error("--axis is required");
    if (opt.grid.empty()) throw domain_error("--grid is required");
    grid = detail::parse_grid(opt.grid);
    if (spec.bounds.empty()) throw domain_error("no bounds requested");
    if (opt.axis == "lambda2" && source != "example:exponential")
      throw domain_error("lambda2 sweep applies only to example:exponential");
    if (opt.axis != "posterior" && opt.axis != "p" && opt.axis != "q" &&
        opt.axis != "lambda2" && opt.axis != "alpha")
      throw domain_error("unknown sweep axis '" + opt.axis + "'");
    if (opt.axis != "posterior" && opt.axis != "lambda2" && !spec.has_problem())
      throw domain_error("spec contains no hypothesis problem");
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  out << "sweep,value,bound,estimate,std_error\n";
  for (double v : grid) {
    for (auto req : spec.bounds) {
      try {
        double estimate;
        std::string se;
        if (opt.axis == "posterior") {
          if (req.name == "b1")
            estimate = binary_pointwise_b1(v, detail::request_p(req));
          else if (req.name == "b2")
            estimate = binary_pointwise_b2(v, detail::request_p(req));
          else
            throw domain_error("posterior axis supports b1 and b2 only");
        } else {
          if (opt.axis == "p" || opt.axis == "q") {
            if (req.name == "b1" || req.name == "b2" || req.name == "jb1" ||
                req.name == "jb2" || req.name == "upper_renyi" || req.name == "upper_gmd3") {
              req.params.erase(opt.axis == "p" ? "q" : "p");
              req.params[opt.axis] = v;
            }
          } else if (opt.axis == "alpha") {
            if (req.name == "classic:ATLB" || req.name == "classic:JAlpha")
              req.params["alpha"] = v;
          }
          ParsedSpec eval_spec = spec;
          if (opt.axis == "lambda2") {
            auto params = example_params;
            params["lambda2"] = v;
            eval_spec = builtin_example("exponential", params);
            eval_spec.config = spec.config;
          }
          Estimate est = detail::evaluate_request(eval_spec, req, eval_spec.config);
          estimate = est.value;
          if (est.std_error) se = fmt(*est.std_error);
        }
        std::string name = req.name;
        std::string params = detail::params_string(req);
        if (!params.empty()) name += " " + params;
        out << opt.axis << "," << fmt(v) << "," << name << "," << fmt(estimate) << "," << se
            << "\n";
      } catch (const error& e) {
        err << "error evaluating " << req.name << " at " << opt.axis << "=" << fmt(v) << ": "
            << e.what() << "\n";
        return kExitNumerical;
      }
    }
  }
  return kExitOk;
}

// zzlb: (h, inner, filled) samples plus a final bound row.
inline int cmd_zzlb(const std::string& source, const std::vector<std::string>& tokens,
                    const Options& opt, std::ostream& out, std::ostream& err) {
  ParsedSpec spec;
  PminProvider provider;
  ZzlbGrid grid;
  try {
    std::map<std::string, double> example_params;
    std::vector<BoundRequest> extra;
    detail::parse_tokens(tokens, example_params, extra);
    if (!extra.empty()) throw domain_error("zzlb takes no bound tokens");
    spec = detail::load_source(source, example_params);
    detail::apply_options(opt, spec.config);
    if (!spec.estimation) throw domain_error("spec contains no [estimation] section");
    if (opt.provider == "exact-map")
      provider = PminProvider::exact_map();
    else if (opt.provider == "b1")
      provider = PminProvider::b1(PExponent(opt.p));
    else if (opt.provider == "b2")
      provider = PminProvider::b2(PExponent(opt.p));
    else
      throw domain_error("unknown provider '" + opt.provider + "'");
    grid = make_zzlb_grid(*spec.estimation, opt.phi_step, opt.h_step, 1e-8, opt.h_max);
    grid.validate();
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    auto curve = zzlb_curve(*spec.estimation, provider, grid, spec.config);
    out << "h,inner,filled,bound\n";
    for (std::size_t i = 0; i < curve.h.size(); ++i)
      out << fmt(curve.h[i]) << "," << fmt(curve.inner[i]) << "," << fmt(curve.filled[i])
          << ",\n";
    out << ",,," << fmt(curve.bound.value) << "\n";
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace cli
}  // namespace errbound
