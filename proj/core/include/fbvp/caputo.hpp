#pragma once

#include <optional>
#include <vector>

#include "fbvp/grid.hpp"
#include "fbvp/problem.hpp"

namespace fbvp {

/// Discrete Caputo derivative on the nodes of a GridFunction. Entries for
/// t_0 and t_1 are left empty: the scheme does not define them.
struct CaputoValues {
  std::vector<std::optional<double>> values;
  double step = 0.0;

  bool defined(std::size_t i) const { return values.at(i).has_value(); }
};

/// L1-type approximation of the Caputo derivative of order mu in (1, 2].
///
/// x'' on [t_{k-1}, t_k] is replaced by the mean of the neighbouring second
/// differences (x_{k+1} - 2 x_k + x_{k-1}) / h^2, the two missing ones at
/// t_0 and t_N by linear extrapolation, and convolved with
///   w_j = h^{2-mu} ((j+1)^{2-mu} - j^{2-mu}) / Gamma(3 - mu).
/// For mu == 2 the result is the plain second difference at t_n.
///
/// When initial_slope = x'(0) is known, the mean over [t_0, t_1] becomes
/// (x'(t_1) - x'(0)) / h with a central difference for x'(t_1); this keeps
/// the scheme accurate for x(0) + c t^beta, 1 < beta < 2.
///
/// Throws DomainError when the grid has fewer than 8 intervals or mu is
/// outside (1, 2].
CaputoValues caputo_apply(const GridFunction& x, double mu,
                          std::optional<double> initial_slope = std::nullopt);

struct Window {
  double lo;
  double hi;
};

/// Pointwise defect D^mu x + f(t, x + shift) - omega x at every node, with
/// the Neumann datum x'(0) = 0 passed to caputo_apply; empty
/// where the discrete derivative is undefined, at t = 0 and t = 1, and
/// where f is not finite.
std::vector<std::optional<double>> residual_profile(const ProblemSpec& problem,
                                                    const GridFunction& x, double shift = 0.0);

/// sup over nodes t_i in [window.lo, window.hi] of the absolute defect.
///
/// The window must lie strictly inside (0, 1) and x must be positive on it.
/// shift = 1/m gives the defect of the regularized equation.
double residual(const ProblemSpec& problem, const GridFunction& x, Window window,
                double shift = 0.0);

}  // namespace fbvp
