#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fbvp {

enum class Interp { kLinear, kCubic };

/// Values on the uniform grid t_i = i / N, i = 0..N, over [0, 1].
///
/// Invariants: N >= 8 and every value finite.
class GridFunction {
 public:
  GridFunction(std::vector<double> values, Interp interp = Interp::kLinear);

  /// Samples fn at the N + 1 nodes.
  template <typename Fn>
  static GridFunction sample(std::size_t intervals, Fn&& fn, Interp interp = Interp::kLinear) {
    std::vector<double> v(intervals + 1);
    for (std::size_t i = 0; i <= intervals; ++i) v[i] = fn(node_at(i, intervals));
    return GridFunction(std::move(v), interp);
  }

  static double node_at(std::size_t i, std::size_t intervals) {
    return static_cast<double>(i) / static_cast<double>(intervals);
  }

  std::size_t intervals() const noexcept { return values_.size() - 1; }
  std::size_t size() const noexcept { return values_.size(); }
  double step() const noexcept { return 1.0 / static_cast<double>(intervals()); }
  double node(std::size_t i) const { return node_at(i, intervals()); }
  Interp interp() const noexcept { return interp_; }

  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  /// Interpolated value at t in [0, 1].
  double operator()(double t) const;

  double sup_norm() const;
  /// max_i |a_i - b_i|; grids must match.
  friend double sup_distance(const GridFunction& a, const GridFunction& b);

 private:
  std::vector<double> values_;
  Interp interp_;
};

}  // namespace fbvp
