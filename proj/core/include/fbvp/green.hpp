#pragma once

#include "fbvp/specfun.hpp"

namespace fbvp {

/// Fractional order mu in (1, 2] and spectral shift omega > 0 of
///   D^mu x(t) + y(t) = omega x(t),  x'(0) = 0,  x(1) = 0.
class KernelParams {
 public:
  KernelParams(double mu, double omega);

  double mu() const noexcept { return mu_; }
  double omega() const noexcept { return omega_; }

 private:
  double mu_;
  double omega_;
};

/// Green's function of the linear problem above together with the kernel
/// mass function sigma(t).
///
/// With A(t) = E_{mu,1}(omega t^mu) / E_{mu,1}(omega) and
/// K(s) = s^{mu-1} E_{mu,mu}(omega s^mu):
///
///   G(t, tau) = A(t) K(1 - tau) - K(t - tau)   for tau <= t,
///   G(t, tau) = A(t) K(1 - tau)                for tau >= t.
///
/// The Mittag-Leffler coefficient tables are built once per instance; all
/// member functions are const and thread-safe.
class GreenFunction {
 public:
  explicit GreenFunction(const KernelParams& params);

  const KernelParams& params() const noexcept { return params_; }

  /// G(t, tau) on the unit square. DomainError outside it.
  double operator()(double t, double tau) const;

  /// sigma(t) = E_{mu,1}(w t^mu) E_{mu,mu+1}(w) - t^mu E_{mu,1}(w) E_{mu,mu+1}(w t^mu),
  /// evaluated from this definition.
  double sigma(double t) const;

  /// sigma(t) through the reduction (E_{mu,1}(w) - E_{mu,1}(w t^mu)) / w.
  /// Independent cross-check of sigma(); not used on the main path.
  double sigma_reduced(double t) const;

  /// sigma(1 - s) without forming 1 - s, accurate as s -> 0. Sums
  /// (1/w) sum_{k>=1} w^k (1 - (1-s)^{mu k}) / Gamma(mu k + 1) with expm1.
  double sigma_complement(double s) const;

  /// Closed form of the integral of G(t, .) over [0, 1]: sigma(t) / E_{mu,1}(omega).
  double mass(double t) const;

  /// sigma(t) / (omega E_{mu,1}(omega)), the profile appearing in the
  /// solvability hypotheses and the a-priori lower bound. It equals mass(t)
  /// only for omega = 1.
  double bound_profile(double t) const;

  /// A(t) = E_{mu,1}(omega t^mu) / E_{mu,1}(omega).
  double left_factor(double t) const;
  /// K(s) = s^{mu-1} E_{mu,mu}(omega s^mu) for s in [0, 1].
  double memory_kernel(double s) const;

  double e_mu_1(double x) const { return e_mu_1_(x); }
  double e_mu_mu(double x) const { return e_mu_mu_(x); }
  double e_mu_mu1(double x) const { return e_mu_mu1_(x); }

  /// E_{mu,1}(omega), E_{mu,mu}(omega), E_{mu,mu+1}(omega).
  double e1_at_omega() const noexcept { return e1_omega_; }
  double emm_at_omega() const noexcept { return emm_omega_; }
  double emm1_at_omega() const noexcept { return emm1_omega_; }

 private:
  KernelParams params_;
  MittagLeffler e_mu_1_;
  MittagLeffler e_mu_mu_;
  MittagLeffler e_mu_mu1_;
  double e1_omega_;
  double emm_omega_;
  double emm1_omega_;
};

/// Free-function forms. Each builds a GreenFunction; prefer the class in loops.
double sigma(const KernelParams& params, double t);
double green_eval(const KernelParams& params, double t, double tau);
double green_mass(const KernelParams& params, double t);

}  // namespace fbvp
