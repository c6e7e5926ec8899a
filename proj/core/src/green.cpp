#include "fbvp/green.hpp"

#include <cmath>
#include <sstream>

#include "fbvp/errors.hpp"
#include "fbvp/summation.hpp"

namespace fbvp {

namespace {

void check_unit(const char* what, double v) {
  if (!(v >= 0.0 && v <= 1.0)) {
    std::ostringstream os;
    os << what << " = " << v << " lies outside [0, 1]";
    throw DomainError(os.str());
  }
}

}  // namespace

KernelParams::KernelParams(double mu, double omega) : mu_(mu), omega_(omega) {
  if (!(mu > 1.0 && mu <= 2.0)) {
    std::ostringstream os;
    os << "KernelParams: mu must lie in (1, 2], got " << mu;
    throw DomainError(os.str());
  }
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    std::ostringstream os;
    os << "KernelParams: omega must be positive, got " << omega;
    throw DomainError(os.str());
  }
}

GreenFunction::GreenFunction(const KernelParams& params)
    : params_(params),
      e_mu_1_(MLIndex(params.mu(), 1.0)),
      e_mu_mu_(MLIndex(params.mu(), params.mu())),
      e_mu_mu1_(MLIndex(params.mu(), params.mu() + 1.0)),
      e1_omega_(e_mu_1_(params.omega())),
      emm_omega_(e_mu_mu_(params.omega())),
      emm1_omega_(e_mu_mu1_(params.omega())) {}

double GreenFunction::left_factor(double t) const {
  return e_mu_1_(params_.omega() * std::pow(t, params_.mu())) / e1_omega_;
}

double GreenFunction::memory_kernel(double s) const {
  if (s <= 0.0) return 0.0;
  const double mu = params_.mu();
  return std::pow(s, mu - 1.0) * e_mu_mu_(params_.omega() * std::pow(s, mu));
}

double GreenFunction::operator()(double t, double tau) const {
  check_unit("green: t", t);
  check_unit("green: tau", tau);
  const double tail = left_factor(t) * memory_kernel(1.0 - tau);
  // On the diagonal the memory term is exactly zero for mu > 1.
  if (tau >= t) return tail;
  return tail - memory_kernel(t - tau);
}

double GreenFunction::sigma(double t) const {
  check_unit("sigma: t", t);
  if (t == 1.0) return 0.0;
  const double mu = params_.mu();
  const double w = params_.omega();
  const double tm = std::pow(t, mu);
  const double s = e_mu_1_(w * tm) * emm1_omega_ - tm * e1_omega_ * e_mu_mu1_(w * tm);
  return s > 0.0 ? s : 0.0;
}

double GreenFunction::sigma_reduced(double t) const {
  check_unit("sigma: t", t);
  const double w = params_.omega();
  return (e1_omega_ - e_mu_1_(w * std::pow(t, params_.mu()))) / w;
}

double GreenFunction::sigma_complement(double s) const {
  check_unit("sigma: s", s);
  if (s == 0.0) return 0.0;
  const double mu = params_.mu();
  const double w = params_.omega();
  const double log_base = std::log1p(-s);
  const EvalPolicy& policy = e_mu_1_.policy();
  CompensatedSum sum;
  double power = 1.0;
  for (int k = 1; k <= policy.k_max; ++k) {
    power *= w;
    const double gap = s == 1.0 ? 1.0 : -std::expm1(mu * k * log_base);
    const double term = power * gap * e_mu_1_.coefficient(k);
    if (k > 1 && term < policy.rel_tol * sum.value()) return sum.value() / w;
    sum.add(term);
  }
  throw ConvergenceError("sigma_complement: series did not converge");
}

double GreenFunction::mass(double t) const { return sigma(t) / e1_omega_; }

double GreenFunction::bound_profile(double t) const {
  return sigma(t) / (params_.omega() * e1_omega_);
}

double sigma(const KernelParams& params, double t) { return GreenFunction(params).sigma(t); }

double green_eval(const KernelParams& params, double t, double tau) {
  return GreenFunction(params)(t, tau);
}

double green_mass(const KernelParams& params, double t) { return GreenFunction(params).mass(t); }

}  // namespace fbvp
