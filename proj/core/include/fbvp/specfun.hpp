#pragma once

#include <vector>

namespace fbvp {

/// Gamma function for positive real arguments.
///
/// Accurate to a relative error of 1e-13 on (0, 50]. Throws DomainError for
/// x <= 0 (the negative axis is never needed here).
double gamma_fn(double x);

/// Parameters (mu, nu) of the two-parameter Mittag-Leffler function
/// E_{mu,nu}(x) = sum_k x^k / Gamma(mu k + nu). Both must be positive.
class MLIndex {
 public:
  MLIndex(double mu, double nu);

  double mu() const noexcept { return mu_; }
  double nu() const noexcept { return nu_; }

 private:
  double mu_;
  double nu_;
};

/// Truncation policy for the Mittag-Leffler series.
struct EvalPolicy {
  /// Summation stops once the next term falls below rel_tol times the
  /// partial sum.
  double rel_tol = 1e-17;
  /// Largest admissible series index; reaching it is a ConvergenceError.
  int k_max = 600;

  void validate() const;
};

/// Largest argument for which mittag_leffler is documented to be valid.
inline constexpr double kMittagLefflerMaxArgument = 100.0;

/// E_{mu,nu}(x) for x in [0, 100] by direct series summation.
///
/// All terms are nonnegative, so the result is a lower bound of the true
/// value that converges from below as rel_tol shrinks. Terms are formed from
/// log-Gamma of (mu k + nu) and accumulated in ascending k with compensated
/// summation.
double mittag_leffler(const MLIndex& idx, double x, const EvalPolicy& policy = {});

/// E_{mu,nu} with the reciprocal Gamma coefficients tabulated once.
///
/// Same truncation rule and accumulation order as mittag_leffler(). Immutable
/// after construction, so one instance can be shared between threads.
class MittagLeffler {
 public:
  explicit MittagLeffler(const MLIndex& idx, const EvalPolicy& policy = {});

  double operator()(double x) const;

  const MLIndex& index() const noexcept { return idx_; }
  const EvalPolicy& policy() const noexcept { return policy_; }

  /// 1 / Gamma(mu k + nu) for 0 <= k <= policy().k_max.
  double coefficient(int k) const { return coeff_.at(static_cast<std::size_t>(k)); }

 private:
  MLIndex idx_;
  EvalPolicy policy_;
  std::vector<double> coeff_;  // 1 / Gamma(mu k + nu), k = 0..k_max
};

}  // namespace fbvp
