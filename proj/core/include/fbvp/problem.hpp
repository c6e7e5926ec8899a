#pragma once

#include <functional>
#include <string>

#include "fbvp/green.hpp"

namespace fbvp {

using SourceFn = std::function<double(double t, double x)>;
using ScalarFn = std::function<double(double)>;

/// One instance of
///   D^mu x(t) + f(t, x(t)) = omega x(t),  x'(0) = 0,  x(1) = 0,
/// together with the decomposition used by the solvability hypotheses:
/// |f(t, x)| <= q(t) (u(x) + v(x)) with u decreasing and v increasing, and
/// f(t, x) >= gamma(R) for x in (0, R].
struct ProblemSpec {
  KernelParams params;
  SourceFn f;
  ScalarFn q;
  ScalarFn u;
  ScalarFn v;
  ScalarFn gamma;
  double R;
  std::string name = "custom";
  /// Optional q(1 - s) evaluated without forming 1 - s. When present,
  /// integrals of q near t = 1 are taken in the reflected variable.
  ScalarFn q_reflected;

  /// Checks that every callable is set and R > 0.
  void validate() const;
};

}  // namespace fbvp
