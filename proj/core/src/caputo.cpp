#include "fbvp/caputo.hpp"

#include <cmath>
#include <sstream>

#include "fbvp/errors.hpp"
#include "fbvp/specfun.hpp"

namespace fbvp {

CaputoValues caputo_apply(const GridFunction& x, double mu, std::optional<double> initial_slope) {
  if (!(mu > 1.0 && mu <= 2.0)) throw DomainError("caputo_apply: mu must lie in (1, 2]");
  const std::size_t n = x.intervals();
  if (n < 8) throw DomainError("caputo_apply: grid too coarse (need N >= 8)");
  const double h = x.step();
  const auto v = x.values();

  std::vector<double> d2(n + 1);
  for (std::size_t k = 1; k < n; ++k) d2[k] = (v[k + 1] - 2.0 * v[k] + v[k - 1]) / (h * h);
  d2[0] = 2.0 * d2[1] - d2[2];
  d2[n] = 2.0 * d2[n - 1] - d2[n - 2];

  CaputoValues out;
  out.step = h;
  out.values.assign(n + 1, std::nullopt);

  if (mu == 2.0) {
    for (std::size_t i = 2; i <= n; ++i) out.values[i] = d2[i];
    return out;
  }

  const double a = 2.0 - mu;
  const double scale = std::pow(h, a) / gamma_fn(3.0 - mu);
  std::vector<double> w(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double jd = static_cast<double>(j);
    w[j] = scale * (std::pow(jd + 1.0, a) - std::pow(jd, a));
  }
  std::vector<double> mean(n + 1);
  for (std::size_t k = 1; k <= n; ++k) mean[k] = 0.5 * (d2[k - 1] + d2[k]);
  if (initial_slope) mean[1] = ((v[2] - v[0]) / (2.0 * h) - *initial_slope) / h;

  for (std::size_t i = 2; i <= n; ++i) {
    double acc = 0.0;
    for (std::size_t k = 1; k <= i; ++k) acc += w[i - k] * mean[k];
    out.values[i] = acc;
  }
  return out;
}

std::vector<std::optional<double>> residual_profile(const ProblemSpec& problem,
                                                    const GridFunction& x, double shift) {
  const CaputoValues d = caputo_apply(x, problem.params.mu(), 0.0);
  const double w = problem.params.omega();
  std::vector<std::optional<double>> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!d.defined(i)) continue;
    const double t = x.node(i);
    if (t <= 0.0 || t >= 1.0) continue;
    const double fx = problem.f(t, x[i] + shift);
    if (!std::isfinite(fx)) continue;
    out[i] = *d.values[i] + fx - w * x[i];
  }
  return out;
}

double residual(const ProblemSpec& problem, const GridFunction& x, Window window, double shift) {
  if (!(window.lo > 0.0 && window.hi < 1.0 && window.lo < window.hi)) {
    throw DomainError("residual: window must lie strictly inside (0, 1)");
  }
  const auto profile = residual_profile(problem, x, shift);
  double worst = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double t = x.node(i);
    if (t < window.lo || t > window.hi) continue;
    if (!(x[i] + shift > 0.0)) {
      std::ostringstream os;
      os << "residual: x(" << t << ") = " << x[i] << " is not positive inside the window";
      throw DomainError(os.str());
    }
    if (!profile[i]) {
      if (i < 2) continue;
      std::ostringstream os;
      os << "residual: f(" << t << ", " << x[i] + shift << ") is not finite";
      throw DomainError(os.str());
    }
    worst = std::max(worst, std::abs(*profile[i]));
    any = true;
  }
  if (!any) throw DomainError("residual: window contains no node with a defined derivative");
  return worst;
}

}  // namespace fbvp
