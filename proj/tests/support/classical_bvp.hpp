#pragma once

#include <functional>
#include <vector>

namespace fbvp::testing {

struct ClassicalResult {
  std::vector<double> x;  // values at t_i = i / N, i = 0..N
  int newton_steps = 0;
  double update_norm = 0.0;
};

/// Second-order finite differences with Newton's method for
///   x'' + F(t, x) = omega x,  x'(0) = 0,  x(1) = 0
/// on N intervals. The Neumann condition uses a reflected ghost node; the
/// Jacobian of F is taken by central differences.
ClassicalResult solve_classical(const std::function<double(double, double)>& F, double omega,
                                std::size_t intervals, std::vector<double> guess,
                                double tol = 1e-13, int max_steps = 100);

}  // namespace fbvp::testing
