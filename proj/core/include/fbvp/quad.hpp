#pragma once

#include <functional>

namespace fbvp {

/// One integral over the open interval (a, b).
///
/// Endpoints flagged singular are never sampled; panels that touch them are
/// refined geometrically toward the endpoint.
struct QuadRequest {
  std::function<double(double)> integrand;
  double a = 0.0;
  double b = 1.0;
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  bool singular_left = false;
  bool singular_right = false;
  int max_subdivisions = 4000;
};

struct QuadResult {
  double value = 0.0;
  /// Sum over panels of |K31 - G15|, a pessimistic proxy for the true error.
  double error_estimate = 0.0;
  int panels = 0;
  long evaluations = 0;
};

/// Globally adaptive Gauss-Kronrod (15/31) quadrature.
///
/// Refines the panel with the largest error estimate until the summed
/// estimate is at most max(abs_tol, rel_tol |value|). Panel sums are reduced
/// in left-to-right order, so identical requests give bit-identical results.
///
/// Throws QuadratureError (kBudgetExceeded) when max_subdivisions is reached
/// or no panel can be split further, and (kNonFiniteSample) as soon as the
/// integrand returns NaN or infinity.
QuadResult integrate(const QuadRequest& req);

}  // namespace fbvp
