#include "fbvp/solver.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "fbvp/conditions.hpp"
#include "fbvp/parallel.hpp"
#include "fbvp/quad.hpp"
#include "fbvp/summation.hpp"

namespace fbvp {

namespace {

// Geometric grading depth toward t = 0 (where q may blow up like t^{-1/2})
// and toward the right end of panels that touch a kernel kink or t = 1.
constexpr int kLevelsAtZero = 50;
constexpr int kLevelsAtKink = 30;
constexpr int kLevelsInteriorSide = 4;

// One quadrature node on the reference panel [0, 1]. Nodes in the right half
// store their distance eta to 1 so that 1 - xi never has to be formed.
struct RefNode {
  double xi;
  double eta;
  double weight;
  bool from_right;
};

template <std::size_t N>
std::vector<std::pair<double, double>> gauss_on_unit() {
  using boost::math::quadrature::gauss;
  const auto& x = gauss<double, N>::abscissa();
  const auto& w = gauss<double, N>::weights();
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      out.emplace_back(0.5, 0.5 * w[i]);
      continue;
    }
    out.emplace_back(0.5 * (1.0 - x[i]), 0.5 * w[i]);
    out.emplace_back(0.5 * (1.0 + x[i]), 0.5 * w[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<std::pair<double, double>>& panel_gauss() {
  static const auto rule = gauss_on_unit<10>();
  return rule;
}

// Nodes on [0, length] graded geometrically toward 0, as distances from 0.
void graded_from_zero(double length, int levels, std::vector<std::pair<double, double>>& out) {
  const auto& g = panel_gauss();
  double hi = length;
  for (int k = 0; k <= levels; ++k) {
    const double lo = k == levels ? 0.0 : 0.5 * hi;
    for (const auto& [x, w] : g) out.emplace_back(lo + (hi - lo) * x, (hi - lo) * w);
    hi = lo;
  }
}

// Reference rule graded toward both ends of [0, 1].
std::vector<RefNode> two_sided_rule(int left_levels, int right_levels) {
  std::vector<RefNode> nodes;
  std::vector<std::pair<double, double>> half;
  graded_from_zero(0.5, left_levels, half);
  for (const auto& [d, w] : half) nodes.push_back({d, 1.0 - d, w, false});
  half.clear();
  graded_from_zero(0.5, right_levels, half);
  for (const auto& [d, w] : half) nodes.push_back({1.0 - d, d, w, true});
  return nodes;
}

std::vector<RefNode> interior_rule() {
  std::vector<RefNode> nodes;
  for (const auto& [x, w] : panel_gauss()) nodes.push_back({x, 1.0 - x, w, false});
  return nodes;
}

// Lagrange basis of the interior panel nodes, evaluated at xi.
std::vector<double> lagrange_basis(const std::vector<RefNode>& nodes, double xi) {
  std::vector<double> out(nodes.size(), 1.0);
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    for (std::size_t b = 0; b < nodes.size(); ++b) {
      if (a != b) out[a] *= (xi - nodes[b].xi) / (nodes[a].xi - nodes[b].xi);
    }
  }
  return out;
}

void check_grid(std::size_t intervals) {
  if (intervals < 8) throw DomainError("solver: grid needs at least 9 nodes");
}

}  // namespace

Truncation::Truncation(int m, double R) : m_(m), R_(R) {
  if (m < 1) throw DomainError("Truncation: m must be at least 1");
  if (!(R > 0.0)) throw DomainError("Truncation: R must be positive");
}

double clamp(double x, const Truncation& trunc) {
  const double lo = trunc.floor();
  return std::min(std::max(x + lo, lo), trunc.R());
}

std::vector<double> apply_T_at(const ProblemSpec& problem, const Truncation& trunc,
                               const GridFunction& x, const std::vector<std::size_t>& nodes,
                               double quad_tol) {
  problem.validate();
  const GreenFunction green(problem.params);
  std::vector<double> out(nodes.size());
  parallel_for(nodes.size(), [&](std::size_t n) {
    const double t = x.node(nodes.at(n));
    const auto integrand = [&](double tau) {
      return green(t, tau) * problem.f(tau, clamp(x(tau), trunc));
    };
    double total = 0.0;
    for (const auto& [a, b] : {std::pair{0.0, t}, std::pair{t, 1.0}}) {
      if (!(a < b)) continue;
      QuadRequest req;
      req.integrand = integrand;
      req.a = a;
      req.b = b;
      req.abs_tol = quad_tol;
      req.rel_tol = quad_tol;
      req.singular_left = true;
      req.singular_right = true;
      total += integrate(req).value;
    }
    out[n] = total;
  });
  return out;
}

GridFunction apply_T(const ProblemSpec& problem, const Truncation& trunc, const GridFunction& x,
                     double quad_tol) {
  std::vector<std::size_t> all(x.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return GridFunction(apply_T_at(problem, trunc, x, all, quad_tol), x.interp());
}

DiscreteOperator::DiscreteOperator(const ProblemSpec& problem, std::size_t intervals,
                                   Interp interp)
    : problem_(problem), green_(problem.params), intervals_(intervals), interp_(interp) {
  problem_.validate();
  check_grid(intervals);
  const std::size_t n = intervals;
  const double h = 1.0 / static_cast<double>(n);

  const std::vector<RefNode> first_rule = two_sided_rule(kLevelsAtZero, kLevelsAtKink);
  const std::vector<RefNode> inner_rule = interior_rule();
  const std::vector<RefNode> last_rule = two_sided_rule(kLevelsInteriorSide, kLevelsAtKink);
  panel_points_ = inner_rule.size();

  // Node layout and interpolation stencils.
  std::vector<const RefNode*> ref;
  std::vector<std::size_t> panel_of;
  offset_.push_back(0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& rule = j == 0 ? first_rule : (j + 1 == n ? last_rule : inner_rule);
    for (const RefNode& node : rule) {
      const double tj = GridFunction::node_at(j, n);
      const double tj1 = GridFunction::node_at(j + 1, n);
      tau_.push_back(node.from_right ? tj1 - h * node.eta : tj + h * node.xi);
      ref.push_back(&node);
      panel_of.push_back(j);

      NodeInterp st{};
      if (interp_ == Interp::kLinear) {
        st.first = j;
        st.count = 2;
        st.weight = {node.eta, node.from_right ? 1.0 - node.eta : node.xi, 0.0, 0.0};
      } else {
        st.first = std::min(j == 0 ? std::size_t{0} : j - 1, n - 3);
        st.count = 4;
        const double u = static_cast<double>(j - st.first) + node.xi;
        for (std::size_t a = 0; a < 4; ++a) {
          double basis = 1.0;
          for (std::size_t b = 0; b < 4; ++b) {
            if (a != b) basis *= (u - static_cast<double>(b)) / (static_cast<double>(a) - static_cast<double>(b));
          }
          st.weight[a] = basis;
        }
      }
      interp_at_.push_back(st);
    }
    offset_.push_back(tau_.size());
  }

  const std::size_t total = tau_.size();
  const GreenFunction& g = green_;

  // Distance from tau_k to 1, formed without cancellation near t = 1.
  auto one_minus_tau = [&](std::size_t k) {
    const RefNode& node = *ref[k];
    const double panels_right = static_cast<double>(n - panel_of[k] - 1);
    return node.from_right ? h * (panels_right + node.eta) : h * (panels_right + 1.0 - node.xi);
  };

  tail_weight_.resize(total);
  parallel_for(total, [&](std::size_t k) {
    tail_weight_[k] = h * ref[k]->weight * g.memory_kernel(one_minus_tau(k));
  });

  left_factor_.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) left_factor_[i] = g.left_factor(GridFunction::node_at(i, n));

  // Panel 0 against every target t_i, i >= 1.
  const std::size_t p0 = offset_[1];
  first_panel_.assign((n + 1) * p0, 0.0);
  parallel_for(n, [&](std::size_t row) {
    const std::size_t i = row + 1;
    for (std::size_t k = 0; k < p0; ++k) {
      const RefNode& node = *ref[k];
      const double s = node.from_right ? h * (static_cast<double>(i - 1) + node.eta)
                                       : h * (static_cast<double>(i) - node.xi);
      first_panel_[i * p0 + k] = h * node.weight * g.memory_kernel(s);
    }
  });

  // Interior panels at distance d >= 2 from the target: smooth kernel.
  const std::size_t pts = panel_points_;
  far_.assign((n + 1) * pts, 0.0);
  parallel_for(n + 1, [&](std::size_t d) {
    if (d < 2) return;
    for (std::size_t l = 0; l < pts; ++l) {
      const double s = h * (static_cast<double>(d) - inner_rule[l].xi);
      far_[d * pts + l] = h * inner_rule[l].weight * g.memory_kernel(s);
    }
  });

  // Adjacent interior panel: integrate K(h (1 - xi)) against the Lagrange
  // basis with a rule graded toward xi = 1.
  near_.assign(pts, 0.0);
  {
    std::vector<std::pair<double, double>> graded;
    graded_from_zero(1.0, 60, graded);
    std::vector<CompensatedSum> acc(pts);
    for (const auto& [eta, w] : graded) {
      const std::vector<double> basis = lagrange_basis(inner_rule, 1.0 - eta);
      const double kern = g.memory_kernel(h * eta);
      for (std::size_t l = 0; l < pts; ++l) acc[l] += h * w * kern * basis[l];
    }
    for (std::size_t l = 0; l < pts; ++l) near_[l] = acc[l].value();
  }

  // Last panel against t = 1.
  const std::size_t last_begin = offset_[n - 1];
  last_panel_.assign(total - last_begin, 0.0);
  for (std::size_t k = last_begin; k < total; ++k) {
    last_panel_[k - last_begin] = h * ref[k]->weight * g.memory_kernel(one_minus_tau(k));
  }
}

GridFunction DiscreteOperator::apply(const Truncation& trunc, const GridFunction& x) const {
  const std::size_t n = intervals_;
  if (x.intervals() != n) throw DomainError("DiscreteOperator: grid size mismatch");
  const std::size_t total = tau_.size();
  const auto xv = x.values();

  std::vector<double> source(total);
  parallel_for(total, [&](std::size_t k) {
    const NodeInterp& st = interp_at_[k];
    double xk = 0.0;
    for (std::size_t a = 0; a < st.count; ++a) xk += st.weight[a] * xv[st.first + a];
    const double fk = problem_.f(tau_[k], clamp(xk, trunc));
    if (!std::isfinite(fk)) {
      std::ostringstream os;
      os.precision(17);
      os << "T_m: f(" << tau_[k] << ", " << clamp(xk, trunc) << ") is not finite";
      throw DomainError(os.str());
    }
    source[k] = fk;
  });

  CompensatedSum tail;
  for (std::size_t k = 0; k < total; ++k) tail += tail_weight_[k] * source[k];
  const double tail_sum = tail.value();

  const std::size_t pts = panel_points_;
  const std::size_t p0 = offset_[1];
  std::vector<double> out(n + 1);
  parallel_for(n + 1, [&](std::size_t i) {
    double memory = 0.0;
    if (i >= 1) {
      const double* w = &first_panel_[i * p0];
      for (std::size_t k = 0; k < p0; ++k) memory += w[k] * source[k];
    }
    // Interior panels j = 1 .. n-2 that lie left of t_i.
    const std::size_t j_end = std::min(i, n - 1);  // exclusive
    for (std::size_t j = 1; j < j_end; ++j) {
      const double* f = &source[offset_[j]];
      const std::size_t d = i - j;
      const double* w = d == 1 ? near_.data() : &far_[d * pts];
      for (std::size_t l = 0; l < pts; ++l) memory += w[l] * f[l];
    }
    if (i == n) {
      const double* f = &source[offset_[n - 1]];
      for (std::size_t k = 0; k < last_panel_.size(); ++k) memory += last_panel_[k] * f[k];
    }
    out[i] = left_factor_[i] * tail_sum - memory;
  });
  return GridFunction(std::move(out), x.interp());
}

FixedPointResult fixed_point(const DiscreteOperator& op, const Truncation& trunc, GridFunction x0,
                             const FixedPointOptions& options) {
  if (!(options.damping > 0.0 && options.damping <= 1.0)) {
    throw DomainError("fixed_point: damping must lie in (0, 1]");
  }
  if (!(options.tol > 0.0)) throw DomainError("fixed_point: tol must be positive");
  double theta = options.damping;
  GridFunction x = std::move(x0);
  std::vector<double> history;
  for (int it = 0; it < options.max_iter; ++it) {
    const GridFunction tx = op.apply(trunc, x);
    const double defect = sup_distance(x, tx);
    if (defect <= options.tol) return FixedPointResult{std::move(x), it, defect, theta};

    history.push_back(defect);
    const std::size_t window = static_cast<std::size_t>(options.divergence_window);
    if (history.size() > window && defect > history[history.size() - 1 - window]) {
      theta *= 0.5;
      history.clear();
      if (theta < options.min_damping) {
        std::ostringstream os;
        os << "fixed_point: iteration diverges (defect " << defect << ") even with damping below "
           << options.min_damping << " at m = " << trunc.m();
        throw ConvergenceError(os.str());
      }
    }
    std::vector<double> next(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) next[i] = (1.0 - theta) * x[i] + theta * tx[i];
    x = GridFunction(std::move(next), x.interp());
  }
  std::ostringstream os;
  os << "fixed_point: no convergence after " << options.max_iter << " iterations at m = "
     << trunc.m() << " (defect " << (history.empty() ? 0.0 : history.back()) << ", damping "
     << theta << ")";
  throw ConvergenceError(os.str());
}

FixedPointResult fixed_point(const ProblemSpec& problem, const Truncation& trunc,
                             const GridFunction& x0, double damping, double tol, int max_iter) {
  const DiscreteOperator op(problem, x0.intervals(), x0.interp());
  FixedPointOptions options;
  options.damping = damping;
  options.tol = tol;
  options.max_iter = max_iter;
  return fixed_point(op, trunc, x0, options);
}

std::vector<int> default_m_schedule(double epsilon, double tol) {
  if (!(epsilon > 0.0) || !(tol > 0.0)) throw DomainError("default_m_schedule: need positive epsilon and tol");
  constexpr int kMaxM = 1 << 30;
  int m = 1;
  while (1.0 / m >= epsilon) {
    if (m >= kMaxM) throw DomainError("default_m_schedule: epsilon too small");
    m *= 2;
  }
  std::vector<int> schedule{m};
  while (1.0 / m > tol && m < kMaxM) {
    m *= 2;
    schedule.push_back(m);
  }
  return schedule;
}

std::vector<std::string> SolveReport::violations() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.passed) out.push_back(c.name + ": " + c.detail);
  }
  return out;
}

namespace {

CertificateCheck make_check(std::string name, bool passed, double value, double limit,
                            const std::string& relation) {
  std::ostringstream os;
  os.precision(6);
  os << "value " << value << (passed ? " satisfies " : " violates ") << relation << " " << limit;
  return CertificateCheck{std::move(name), passed, value, limit, os.str()};
}

}  // namespace

SolveReport solve(const ProblemSpec& problem, const SolveOptions& options) {
  problem.validate();
  if (options.grid_size < 9) throw DomainError("solve: grid_size must be at least 9");
  if (!(options.tol > 0.0)) throw DomainError("solve: tol must be positive");

  SolveReport report;
  report.epsilon = options.epsilon ? *options.epsilon : epsilon_select(problem);
  if (!(report.epsilon > 0.0)) throw DomainError("solve: epsilon must be positive");
  const std::vector<int> schedule = options.m_schedule.empty()
                                        ? default_m_schedule(report.epsilon, options.tol)
                                        : options.m_schedule;
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    if (schedule[k] < 1 || !(1.0 / schedule[k] < report.epsilon)) {
      std::ostringstream os;
      os << "solve: m = " << schedule[k] << " violates 1/m < epsilon = " << report.epsilon;
      throw DomainError(os.str());
    }
    if (k > 0 && schedule[k] <= schedule[k - 1]) throw DomainError("solve: m_schedule must increase");
  }

  const std::size_t intervals = options.grid_size - 1;
  const DiscreteOperator op(problem, intervals, options.interp);
  const GreenFunction& green = op.green();
  const double R = problem.R;
  report.gamma_R = problem.gamma(R);
  report.gamma_R_eps = problem.gamma(R + report.epsilon);

  GridFunction x = GridFunction::sample(
      intervals, [&](double t) { return report.gamma_R * green.mass(t); }, options.interp);

  FixedPointOptions fp;
  fp.damping = options.damping;
  fp.tol = options.fixed_point_tol;
  fp.max_iter = options.max_iter;
  for (int m : schedule) {
    const Truncation trunc(m, R);
    FixedPointResult r = fixed_point(op, trunc, x, fp);
    ContinuationStep step{m, r.iterations, r.defect, r.damping, std::nullopt};
    if (!report.steps.empty()) step.change = sup_distance(r.x, x);
    report.steps.push_back(step);
    x = std::move(r.x);
  }

  const Truncation final_trunc(schedule.back(), R);
  const double tol = options.tol;
  const std::size_t n = intervals;
  const double h = x.step();

  report.lower_bound.resize(n + 1);
  report.stated_lower_bound.resize(n + 1);
  double lower_margin = std::numeric_limits<double>::infinity();
  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = x.node(i);
    report.lower_bound[i] = report.gamma_R_eps * green.mass(t);
    report.stated_lower_bound[i] = report.gamma_R_eps * green.bound_profile(t);
    lower_margin = std::min(lower_margin, x[i] - report.lower_bound[i]);
    x_min = std::min(x_min, x[i]);
    x_max = std::max(x_max, x[i]);
  }

  // (i) continuation in m
  {
    bool decreasing = report.steps.size() >= 2;
    double last = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < report.steps.size(); ++k) {
      const double c = *report.steps[k].change;
      if (k >= 2 && c > last * (1.0 + 1e-9) + 1e-15) decreasing = false;
      last = c;
    }
    report.checks.push_back(make_check("continuation_monotone", decreasing, last, 0.0,
                                       "non-increasing changes, final"));
    report.checks.push_back(make_check("continuation_final_change",
                                       report.steps.size() >= 2 && last < tol, last, tol, "<"));
  }
  // (ii) a-priori bounds
  report.checks.push_back(make_check("lower_bound", lower_margin >= -tol, lower_margin, -tol, ">="));
  report.checks.push_back(
      make_check("upper_bound", x_max <= R - report.epsilon + tol, x_max, R - report.epsilon + tol, "<="));
  report.checks.push_back(make_check("clamp_inactive",
                                     x_min >= -tol && x_max + final_trunc.floor() <= R + tol,
                                     x_max + final_trunc.floor(), R, "<="));
  // (iii) boundary conditions
  report.boundary_value = x[n];
  report.checks.push_back(make_check("dirichlet_at_one", std::abs(x[n]) <= tol, std::abs(x[n]), tol, "<="));
  for (std::size_t k : {1, 2, 4, 8}) {
    report.neumann_quotients.push_back((x[k] - x[0]) / (static_cast<double>(k) * h));
  }
  {
    const auto& q = report.neumann_quotients;
    bool shrinking = true;
    for (std::size_t k = 1; k < q.size(); ++k) shrinking = shrinking && std::abs(q[k - 1]) <= std::abs(q[k]);
    const bool ok = shrinking || std::abs(q[0]) <= tol;
    report.checks.push_back(make_check("neumann_at_zero", ok, std::abs(q[0]), std::abs(q[1]), "<="));
  }
  // (iv) equation residual on the interior window
  report.residual_profile = residual_profile(problem, x);
  report.residual = residual(problem, x, options.residual_window);
  report.residual_regularized = residual(problem, x, options.residual_window, final_trunc.floor());
  report.checks.push_back(make_check("residual", report.residual <= options.residual_threshold,
                                     report.residual, options.residual_threshold, "<="));
  // Independent re-evaluation of T_m with adaptive quadrature.
  if (options.adaptive_check_nodes >= 2) {
    std::vector<std::size_t> nodes;
    for (std::size_t k = 0; k < options.adaptive_check_nodes; ++k) {
      nodes.push_back((k * n) / (options.adaptive_check_nodes - 1));
    }
    const std::vector<double> tx = apply_T_at(problem, final_trunc, x, nodes);
    double defect = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) defect = std::max(defect, std::abs(tx[k] - x[nodes[k]]));
    report.adaptive_defect = defect;
    report.checks.push_back(make_check("adaptive_fixed_point", defect <= tol, defect, tol, "<="));
  }

  report.certified = std::all_of(report.checks.begin(), report.checks.end(),
                                 [](const CertificateCheck& c) { return c.passed; });
  report.solution = std::move(x);
  return report;
}

SolveReport solve_certified(const ProblemSpec& problem, const SolveOptions& options) {
  SolveReport report = solve(problem, options);
  if (!report.certified) {
    std::ostringstream os;
    os << "solve: certification failed:";
    for (const auto& v : report.violations()) os << "\n  " << v;
    throw CertificationError(os.str(), std::move(report));
  }
  return report;
}

}  // namespace fbvp
