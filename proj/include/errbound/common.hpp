#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace errbound {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Base class for all library failures.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Invalid argument or parameter outside its admissible range.
class domain_error : public error {
public:
  using error::error;
};

// Operation not available for this problem kind (e.g. binary-only bound on M>2).
class unsupported_error : public error {
public:
  using error::error;
};

// Numerical failure during evaluation.
class numerical_error : public error {
public:
  using error::error;
};

// Quadrature/MC failed to reach the requested tolerance.
class convergence_error : public numerical_error {
public:
  convergence_error(const std::string& msg, double partial, double achieved)
      : numerical_error(msg), partial_value(partial), achieved_tol(achieved) {}
  double partial_value;
  double achieved_tol;
};

// Integrand returned NaN or +/-inf at a point.
class nonfinite_error : public numerical_error {
public:
  nonfinite_error(const std::string& msg, double x, double value)
      : numerical_error(msg), at(x), value(value) {}
  double at;
  double value;
};

// Spec-file parse failure; line is 1-based.
class parse_error : public error {
public:
  parse_error(const std::string& msg, int line)
      : error(msg + " (line " + std::to_string(line) + ")"), line(line) {}
  int line;
};

struct Interval {
  double lo = -kInf;
  double hi = kInf;
  double width() const { return hi - lo; }
};

enum class Method { Auto, ExactDiscrete, Quadrature, MonteCarlo };

struct ExpectationConfig {
  Method method = Method::Auto;
  double abs_tol = 1e-8;
  double rel_tol = 1e-6;
  int max_subdivisions = 2000;
  long mc_samples = 100000;
  std::uint64_t rng_seed = 0;
  double truncation_mass = 1e-10;

  void validate() const {
    if (abs_tol <= 0 || rel_tol <= 0) throw domain_error("tolerances must be positive");
    if (mc_samples < 100) throw domain_error("mc_samples must be >= 100");
    if (max_subdivisions < 1) throw domain_error("max_subdivisions must be >= 1");
    if (truncation_mass <= 0) throw domain_error("truncation_mass must be positive");
  }
};

// Computed value plus evaluation metadata. std_error is set for Monte Carlo only.
struct Estimate {
  double value = 0.0;
  std::optional<double> std_error;
  long evaluations = 0;
  double achieved_tol = 0.0;
  bool degenerate = false;
};

// Exponent parameter of the Holder bound families; valid range (1, 64].
class PExponent {
public:
  explicit PExponent(double p) : p_(p) {
    if (!(p > 1.0)) throw domain_error("p must be > 1");
    if (!(p <= 64.0)) throw domain_error("p must be <= 64");
  }
  // q >= 2 parameterization, p = q/(q-1).
  static PExponent from_q(double q) {
    if (!(q >= 2.0)) throw domain_error("q must be >= 2");
    return PExponent(q / (q - 1.0));
  }
  double value() const { return p_; }

private:
  double p_;
};

namespace detail {

// Kahan compensated accumulator.
class KahanSum {
public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double sum() const { return s_; }

private:
  double s_ = 0.0;
  double c_ = 0.0;
};

// log(sum_i v_i^e) computed via log-sum-exp on e*log(v_i).
// Entries equal to 0 contribute 0 for e > 0 (skipped) and +inf for e < 0.
inline double log_power_sum(const std::vector<double>& v, double e) {
  double m = -kInf;
  bool any = false;
  for (double x : v) {
    if (x == 0.0) {
      if (e < 0.0) return kInf;
      continue;
    }
    double t = e * std::log(x);
    if (t > m) m = t;
    any = true;
  }
  if (!any) return -kInf;
  double s = 0.0;
  for (double x : v) {
    if (x == 0.0) continue;
    s += std::exp(e * std::log(x) - m);
  }
  return m + std::log(s);
}

// splitmix64 step; used to derive independent per-stratum seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed ^ (0xd1342543de82ef95ULL * (stream + 1));
  return splitmix64(s);
}

}  // namespace detail
}  // namespace errbound
