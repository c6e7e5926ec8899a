#include "fbvp/specfun.hpp"

#include <cmath>
#include <sstream>

#include "fbvp/errors.hpp"
#include "fbvp/summation.hpp"

namespace fbvp {

namespace {

void check_argument(double x) {
  if (!(x >= 0.0) || x > kMittagLefflerMaxArgument) {
    std::ostringstream os;
    os << "mittag_leffler: argument " << x << " outside [0, " << kMittagLefflerMaxArgument << "]";
    throw DomainError(os.str());
  }
}

[[noreturn]] void throw_nonconvergence(const MLIndex& idx, double x, int k_max) {
  std::ostringstream os;
  os << "mittag_leffler: series for E_{" << idx.mu() << "," << idx.nu() << "}(" << x
     << ") did not meet its truncation criterion within k_max = " << k_max << " terms";
  throw ConvergenceError(os.str());
}

// Shared summation loop. term(k) must return the k-th nonnegative term.
template <typename TermFn>
double sum_series(const MLIndex& idx, double x, const EvalPolicy& policy, TermFn&& term) {
  CompensatedSum sum;
  sum.add(term(0));
  if (x == 0.0) return sum.value();
  for (int k = 1; k <= policy.k_max; ++k) {
    const double t = term(k);
    if (!std::isfinite(t)) throw_nonconvergence(idx, x, policy.k_max);
    if (t < policy.rel_tol * sum.value()) return sum.value();
    sum.add(t);
  }
  throw_nonconvergence(idx, x, policy.k_max);
}

}  // namespace

double gamma_fn(double x) {
  if (!(x > 0.0)) {
    std::ostringstream os;
    os << "gamma_fn: argument must be positive, got " << x;
    throw DomainError(os.str());
  }
  return std::tgamma(x);
}

MLIndex::MLIndex(double mu, double nu) : mu_(mu), nu_(nu) {
  if (!(mu > 0.0) || !(nu > 0.0) || !std::isfinite(mu) || !std::isfinite(nu)) {
    std::ostringstream os;
    os << "MLIndex: parameters must be positive, got (" << mu << ", " << nu << ")";
    throw DomainError(os.str());
  }
}

void EvalPolicy::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw DomainError("EvalPolicy: rel_tol must lie in (0, 1)");
  if (k_max < 16) throw DomainError("EvalPolicy: k_max must be at least 16");
}

double mittag_leffler(const MLIndex& idx, double x, const EvalPolicy& policy) {
  policy.validate();
  check_argument(x);
  const double log_x = x > 0.0 ? std::log(x) : 0.0;
  return sum_series(idx, x, policy, [&](int k) {
    const double arg = idx.mu() * k + idx.nu();
    const double log_term = (k == 0 ? 0.0 : k * log_x) - std::lgamma(arg);
    return std::exp(log_term);
  });
}

MittagLeffler::MittagLeffler(const MLIndex& idx, const EvalPolicy& policy)
    : idx_(idx), policy_(policy) {
  policy_.validate();
  coeff_.resize(static_cast<std::size_t>(policy_.k_max) + 1);
  for (int k = 0; k <= policy_.k_max; ++k) {
    coeff_[static_cast<std::size_t>(k)] = std::exp(-std::lgamma(idx_.mu() * k + idx_.nu()));
  }
}

double MittagLeffler::operator()(double x) const {
  check_argument(x);
  double power = 1.0;
  int last_k = 0;
  return sum_series(idx_, x, policy_, [&](int k) {
    // Terms are requested in ascending order; keep x^k incrementally.
    for (; last_k < k; ++last_k) power *= x;
    const double c = coeff_[static_cast<std::size_t>(k)];
    if (c == 0.0 && power > 0.0) {
      // Coefficient underflowed; fall back to the log form.
      return std::exp(k * std::log(x) - std::lgamma(idx_.mu() * k + idx_.nu()));
    }
    return c * power;
  });
}

}  // namespace fbvp
