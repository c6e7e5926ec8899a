#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fbvp/errors.hpp"
#include "fbvp/green.hpp"
#include "fbvp/problem.hpp"

namespace fbvp {

/// chi_r = int_0^1 q(t) u(gamma_r sigma(t) / (omega E_{mu,1}(omega))) dt.
/// Propagates QuadratureError when the integral does not converge.
double chi(const ProblemSpec& problem, double r);

/// int_0^1 q(t) u(c sigma(t)) dt.
double weighted_q_integral(const ProblemSpec& problem, double c);

/// int_0^1 q(t) dt.
double q_integral(const ProblemSpec& problem);

struct ConditionOptions {
  /// Sample counts of the t and x grids, both log-refined toward the ends.
  std::size_t t_samples = 100;
  std::size_t x_samples = 100;
  std::vector<double> probes{0.1, 1.0, 10.0};
  double quad_tol = 1e-10;
  /// Relative slack for the pointwise inequalities.
  double slack = 1e-10;
};

struct Verdict {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ProbeIntegral {
  double c = 0.0;
  double value = 0.0;
};

struct ConditionReport {
  double int_q = 0.0;
  std::vector<ProbeIntegral> int_qu;
  double gamma_R = 0.0;
  /// gamma_R E_{mu,mu+1}(omega) / (omega E_{mu,1}(omega)).
  double a2_threshold = 0.0;
  double chi_R = 0.0;
  /// 1 + v(R) / u(R).
  double ratio_factor = 0.0;
  /// R / (E_{mu,mu}(omega) chi_R (1 + v(R) / u(R))).
  double a2_ratio = 0.0;
  std::optional<double> epsilon_max;
  std::vector<Verdict> verdicts;
  bool pass = false;
  /// Resolution statement for the sampled clauses.
  std::string sampling;
  std::string ratio_convention = "1 + v(R)/u(R)";
};

/// Evaluates the integrability, growth, monotonicity, lower-bound, threshold
/// and ratio clauses. Violations are reported, never thrown.
ConditionReport check_A2(const ProblemSpec& problem, const ConditionOptions& options = {});

/// (R - eps) / (E_{mu,mu}(omega) chi_{R+eps} (1 + v(R+eps) / u(R+eps))).
double epsilon_ratio(const ProblemSpec& problem, double eps);

class NoAdmissibleEpsilon : public Error {
 public:
  NoAdmissibleEpsilon(const std::string& what, double upper, double ratio_at_floor)
      : Error(what), upper_(upper), ratio_at_floor_(ratio_at_floor) {}
  /// R - a2_threshold (may be <= 0).
  double upper() const noexcept { return upper_; }
  /// epsilon_ratio at the smallest lattice point, or 0 when there is none.
  double ratio_at_floor() const noexcept { return ratio_at_floor_; }

 private:
  double upper_;
  double ratio_at_floor_;
};

/// Largest eps = k * 1e-6 R in (0, R - a2_threshold] with epsilon_ratio >= 1,
/// found by bisection on the lattice index.
double epsilon_select(const ProblemSpec& problem);

struct SigmaProductMax {
  double t = 0.5;
  double value = 0.0;
};

/// max over t of sigma(t) sigma(1 - t), golden-section search started from
/// the bracket [0, 1] and compared against t = 1/2.
SigmaProductMax max_sigma_product(const KernelParams& params);

/// The built-in family with mu = 1.9, omega = 2:
///   f(t, x) = lambda / sqrt(sigma(t) sigma(1 - t)) (x^{-1/5} - x + R),
///   q = lambda / sqrt(sigma(t) sigma(1 - t)), u = x^{-1/5}, v = x + R,
///   gamma_r = lambda r^{-1/5} / sqrt(max sigma(t) sigma(1 - t)).
ProblemSpec example_problem(double lambda, double R);

struct ExampleConstant {
  std::string name;
  double computed = 0.0;
  double published = 0.0;
  double rel_dev = 0.0;
};

std::vector<ExampleConstant> example_constants(double lambda, double R);

struct LambdaWindow {
  double lo = 0.0;
  double hi = 0.0;
  /// Bound from the ratio clause and from the threshold clause.
  double hi_ratio = 0.0;
  double hi_threshold = 0.0;
};

/// Admissible lambda for the built-in family, from computed integrals.
LambdaWindow lambda_window(double R);

/// The same window from the published rounded coefficients.
LambdaWindow lambda_window_published(double R);

}  // namespace fbvp
