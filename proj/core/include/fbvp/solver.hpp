#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fbvp/caputo.hpp"
#include "fbvp/errors.hpp"
#include "fbvp/green.hpp"
#include "fbvp/grid.hpp"
#include "fbvp/problem.hpp"

namespace fbvp {

/// Regularisation index m and ceiling R of the truncated nonlinearity.
class Truncation {
 public:
  Truncation(int m, double R);

  int m() const noexcept { return m_; }
  double R() const noexcept { return R_; }
  double floor() const noexcept { return 1.0 / m_; }

 private:
  int m_;
  double R_;
};

/// min{max{x + 1/m, 1/m}, R}.
double clamp(double x, const Truncation& trunc);

/// Reference application of
///   (T_m x)(t) = int_0^1 G(t, tau) f(tau, clamp(x(tau))) dtau
/// at every node of x, one adaptive quadrature per node (split at tau = t,
/// both ends of each piece flagged singular). Slow; used to cross-check the
/// discretised operator.
GridFunction apply_T(const ProblemSpec& problem, const Truncation& trunc, const GridFunction& x,
                     double quad_tol = 1e-12);

/// Same as apply_T but only at the listed node indices.
std::vector<double> apply_T_at(const ProblemSpec& problem, const Truncation& trunc,
                               const GridFunction& x, const std::vector<std::size_t>& nodes,
                               double quad_tol = 1e-12);

/// T_m discretised on a fixed grid by product integration.
///
/// The iterate enters only through its interpolant, so T_m x is a linear
/// combination of f sampled at a fixed set of quadrature nodes. Interior
/// panels use Gauss-Legendre nodes; the weights of the panel next to the
/// diagonal integrate the weakly singular memory kernel against the
/// interpolating polynomial exactly. The two end panels use geometrically
/// graded rules for the endpoint singularities of q. Everything that does
/// not depend on the iterate is precomputed.
class DiscreteOperator {
 public:
  DiscreteOperator(const ProblemSpec& problem, std::size_t intervals,
                   Interp interp = Interp::kLinear);

  GridFunction apply(const Truncation& trunc, const GridFunction& x) const;

  std::size_t intervals() const noexcept { return intervals_; }
  std::size_t quadrature_nodes() const noexcept { return tau_.size(); }
  const GreenFunction& green() const noexcept { return green_; }
  const ProblemSpec& problem() const noexcept { return problem_; }
  Interp interp() const noexcept { return interp_; }

 private:
  struct NodeInterp {
    std::size_t first;
    std::array<double, 4> weight;
    std::size_t count;
  };

  ProblemSpec problem_;
  GreenFunction green_;
  std::size_t intervals_;
  Interp interp_;

  // Quadrature nodes grouped by panel: panel j owns [offset_[j], offset_[j+1]).
  std::vector<double> tau_;
  std::vector<NodeInterp> interp_at_;
  std::vector<std::size_t> offset_;
  std::vector<double> tail_weight_;    // weight_k K(1 - tau_k)
  std::vector<double> left_factor_;    // A(t_i)
  std::vector<double> first_panel_;    // [i][k]: weight_k K(t_i - tau_k), panel 0
  std::vector<double> far_;            // [d][l]: weight_l K(t_i - tau), d = i - j >= 2
  std::vector<double> near_;           // [l]: product weights, d = 1, interior panels
  std::vector<double> last_panel_;     // [k]: weight_k K(1 - tau_k) for t = 1, panel N-1
  std::size_t panel_points_ = 0;
};

struct FixedPointOptions {
  double damping = 0.5;
  double tol = 1e-12;
  int max_iter = 2000;
  /// Damping is halved when the defect grew over this many iterations.
  int divergence_window = 10;
  double min_damping = 1.0 / 1024.0;
};

struct FixedPointResult {
  GridFunction x;
  int iterations = 0;
  double defect = 0.0;  // ||x - T x||_inf at return
  double damping = 0.0;
};

/// Damped Picard iteration x <- (1 - theta) x + theta T_m x until
/// ||x - T_m x||_inf <= tol. Throws ConvergenceError with the last defect and
/// damping after max_iter iterations.
FixedPointResult fixed_point(const DiscreteOperator& op, const Truncation& trunc,
                             GridFunction x0, const FixedPointOptions& options = {});

/// Convenience overload that discretises T_m on the grid of x0.
FixedPointResult fixed_point(const ProblemSpec& problem, const Truncation& trunc,
                             const GridFunction& x0, double damping, double tol, int max_iter);

struct SolveOptions {
  /// Number of grid nodes including both endpoints.
  std::size_t grid_size = 801;
  /// Continuation and certification tolerance.
  double tol = 1e-5;
  double damping = 0.5;
  /// Increasing regularisation indices; empty selects powers of two from the
  /// smallest admissible m up to 1/m <= tol.
  std::vector<int> m_schedule;
  Interp interp = Interp::kLinear;
  double fixed_point_tol = 1e-12;
  int max_iter = 2000;
  Window residual_window{0.05, 0.9};
  double residual_threshold = 1e-3;
  /// epsilon of the a-priori bounds; computed by epsilon_select when unset.
  std::optional<double> epsilon;
  /// Number of nodes (evenly spread) re-evaluated with the adaptive apply_T;
  /// zero disables the check.
  std::size_t adaptive_check_nodes = 9;
};

struct ContinuationStep {
  int m = 0;
  int iterations = 0;
  double defect = 0.0;
  double damping = 0.0;
  /// ||x_m - x_{m_prev}||_inf; absent for the first step.
  std::optional<double> change;
};

struct CertificateCheck {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double limit = 0.0;
  std::string detail;
};

struct SolveReport {
  std::optional<GridFunction> solution;
  std::vector<ContinuationStep> steps;
  double epsilon = 0.0;
  double gamma_R = 0.0;
  double gamma_R_eps = 0.0;
  /// gamma_{R+eps} * int_0^1 G(t, tau) dtau, a guaranteed lower bound.
  std::vector<double> lower_bound;
  /// gamma_{R+eps} sigma(t) / (omega E_{mu,1}(omega)), the bound in the form
  /// of the solvability argument; below lower_bound whenever omega >= 1.
  std::vector<double> stated_lower_bound;
  /// Pointwise defect of the unregularised equation (empty where undefined).
  std::vector<std::optional<double>> residual_profile;
  double residual = 0.0;
  double residual_regularized = 0.0;
  double boundary_value = 0.0;
  std::vector<double> neumann_quotients;  // (x(kh) - x(0)) / (kh), k = 1, 2, 4, 8
  std::optional<double> adaptive_defect;
  std::vector<CertificateCheck> checks;
  bool certified = false;

  std::vector<std::string> violations() const;
};

/// Continuation in m with warm starts followed by certification.
///
/// Throws DomainError when the schedule violates 1/m < epsilon, and
/// propagates ConvergenceError from fixed_point. Certification failures are
/// reported through SolveReport::certified and SolveReport::checks.
SolveReport solve(const ProblemSpec& problem, const SolveOptions& options = {});

/// The default m-schedule for a given epsilon and tolerance.
std::vector<int> default_m_schedule(double epsilon, double tol);

class CertificationError : public Error {
 public:
  CertificationError(const std::string& what, SolveReport report)
      : Error(what), report_(std::move(report)) {}
  const SolveReport& report() const noexcept { return report_; }

 private:
  SolveReport report_;
};

/// solve() that throws CertificationError listing violated checks.
SolveReport solve_certified(const ProblemSpec& problem, const SolveOptions& options = {});

}  // namespace fbvp
