#include "fbvp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fbvp/errors.hpp"

namespace fbvp {

GridFunction::GridFunction(std::vector<double> values, Interp interp)
    : values_(std::move(values)), interp_(interp) {
  if (values_.size() < 9) {
    std::ostringstream os;
    os << "GridFunction: need at least 9 nodes, got " << values_.size();
    throw DomainError(os.str());
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      std::ostringstream os;
      os << "GridFunction: non-finite value at node " << i;
      throw DomainError(os.str());
    }
  }
}

double GridFunction::operator()(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("GridFunction: t outside [0, 1]");
  const std::size_t n = intervals();
  const double s = t * static_cast<double>(n);
  const std::size_t j = std::min(static_cast<std::size_t>(s), n - 1);
  const double xi = s - static_cast<double>(j);
  if (interp_ == Interp::kLinear) {
    return (1.0 - xi) * values_[j] + xi * values_[j + 1];
  }
  // Four-point Lagrange on nodes first..first+3, shifted inward at the ends.
  const std::size_t first = std::clamp<std::size_t>(j == 0 ? 0 : j - 1, 0, n - 3);
  const double u = s - static_cast<double>(first);
  double acc = 0.0;
  for (std::size_t a = 0; a < 4; ++a) {
    double basis = 1.0;
    for (std::size_t b = 0; b < 4; ++b) {
      if (a == b) continue;
      basis *= (u - static_cast<double>(b)) / (static_cast<double>(a) - static_cast<double>(b));
    }
    acc += basis * values_[first + a];
  }
  return acc;
}

double GridFunction::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double sup_distance(const GridFunction& a, const GridFunction& b) {
  if (a.size() != b.size()) throw DomainError("sup_distance: grids differ");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace fbvp
