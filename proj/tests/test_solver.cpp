#include <gtest/gtest.h>

#include <cmath>

#include "classical_bvp.hpp"
#include "fbvp/conditions.hpp"
#include "fbvp/solver.hpp"

namespace fbvp {
namespace {

ProblemSpec unit_source(double mu, double omega) {
  auto one = [](double) { return 1.0; };
  return ProblemSpec{KernelParams(mu, omega), [](double, double) { return 1.0; }, one, one,
                     [](double) { return 0.0; }, one, 1.0};
}

ProblemSpec inverse_sqrt(double mu, double omega, double lambda) {
  return ProblemSpec{KernelParams(mu, omega),
                     [lambda](double, double x) { return lambda / std::sqrt(x); },
                     [lambda](double) { return lambda; },
                     [](double x) { return 1.0 / std::sqrt(x); },
                     [](double) { return 0.0; },
                     [lambda](double r) { return lambda / std::sqrt(r); },
                     1.0,
                     "inverse_sqrt"};
}

TEST(Truncation, ClampAndValidation) {
  const Truncation tr(4, 1.0);
  EXPECT_DOUBLE_EQ(tr.floor(), 0.25);
  EXPECT_DOUBLE_EQ(clamp(-3.0, tr), 0.25);
  EXPECT_DOUBLE_EQ(clamp(0.5, tr), 0.75);
  EXPECT_DOUBLE_EQ(clamp(0.9, tr), 1.0);
  EXPECT_THROW(Truncation(0, 1.0), DomainError);
  EXPECT_THROW(Truncation(2, 0.0), DomainError);
}

TEST(Schedule, Default) {
  const auto s = default_m_schedule(0.3, 1e-2);
  ASSERT_FALSE(s.empty());
  EXPECT_EQ(s.front(), 4);
  EXPECT_EQ(s.back(), 128);
  for (std::size_t k = 1; k < s.size(); ++k) EXPECT_EQ(s[k], 2 * s[k - 1]);
  EXPECT_THROW(default_m_schedule(0.0, 1e-3), DomainError);
}

TEST(DiscreteOperator, UnitSourceGivesMass) {
  const ProblemSpec p = unit_source(1.9, 2.0);
  const DiscreteOperator op(p, 100);
  const GridFunction tx = op.apply(Truncation(8, 1.0), GridFunction(std::vector<double>(101, 0.2)));
  const GreenFunction& g = op.green();
  for (std::size_t i = 0; i <= 100; ++i) EXPECT_NEAR(tx[i], g.mass(tx.node(i)), 1e-12) << i;
}

TEST(DiscreteOperator, MatchesAdaptiveQuadrature) {
  const ProblemSpec p = example_problem(0.009, 1.0);
  const GreenFunction g(p.params);
  const auto x = GridFunction::sample(64, [&](double t) { return 0.1 * g.mass(t) / g.mass(0.0); });
  const Truncation tr(16, 1.0);
  const GridFunction fast = DiscreteOperator(p, 64).apply(tr, x);
  const GridFunction slow = apply_T(p, tr, x);
  EXPECT_LT(sup_distance(fast, slow), 1e-9);
  EXPECT_NEAR(fast[64], 0.0, 1e-12);
}

TEST(DiscreteOperator, CubicInterpolationAgrees) {
  const ProblemSpec p = inverse_sqrt(1.5, 1.0, 0.05);
  const auto x = GridFunction::sample(32, [](double t) { return 0.05 * (1.0 - t * t); }, Interp::kCubic);
  const Truncation tr(32, 1.0);
  const GridFunction fast = DiscreteOperator(p, 32, Interp::kCubic).apply(tr, x);
  EXPECT_LT(sup_distance(fast, apply_T(p, tr, x)), 1e-9);
}

TEST(DiscreteOperator, SizeMismatch) {
  const DiscreteOperator op(unit_source(1.5, 1.0), 16);
  EXPECT_THROW(op.apply(Truncation(2, 1.0), GridFunction(std::vector<double>(20, 0.0))), DomainError);
  EXPECT_THROW(DiscreteOperator(unit_source(1.5, 1.0), 4), DomainError);
}

TEST(FixedPoint, BudgetAndDampingErrors) {
  const ProblemSpec p = example_problem(0.009, 1.0);
  const DiscreteOperator op(p, 32);
  const GridFunction x0(std::vector<double>(33, 0.0));
  FixedPointOptions o;
  o.max_iter = 2;
  EXPECT_THROW(fixed_point(op, Truncation(16, 1.0), x0, o), ConvergenceError);
  o.damping = 0.0;
  EXPECT_THROW(fixed_point(op, Truncation(16, 1.0), x0, o), DomainError);
}

TEST(Solve, UnitSourceConvergesAtFirstStep) {
  SolveOptions o;
  o.epsilon = 0.5;
  o.m_schedule = {4, 8, 16};
  const SolveReport r = solve(unit_source(1.9, 2.0), o);
  const GreenFunction g({1.9, 2.0});
  ASSERT_TRUE(r.solution);
  for (std::size_t i = 0; i < r.solution->size(); ++i) {
    EXPECT_NEAR((*r.solution)[i], g.mass(r.solution->node(i)), 1e-12);
  }
  EXPECT_EQ(*r.steps[1].change, 0.0);
  EXPECT_TRUE(r.certified) << ::testing::PrintToString(r.violations());
}

TEST(Solve, RejectsScheduleBelowEpsilon) {
  SolveOptions o;
  o.epsilon = 0.2;
  o.m_schedule = {4, 8};
  EXPECT_THROW(solve(unit_source(1.5, 1.0), o), DomainError);
  o.m_schedule = {16, 8};
  EXPECT_THROW(solve(unit_source(1.5, 1.0), o), DomainError);
  o.m_schedule = {};
  o.grid_size = 5;
  EXPECT_THROW(solve(unit_source(1.5, 1.0), o), DomainError);
}

TEST(Solve, ClassicalUnitSource) {
  const double omega = 1.0;
  SolveOptions o;
  o.grid_size = 801;
  o.epsilon = 0.5;
  o.m_schedule = {4, 8};
  const SolveReport r = solve(unit_source(2.0, omega), o);
  const auto ref = testing::solve_classical([](double, double) { return 1.0; }, omega, 800,
                                            std::vector<double>(801, 0.0));
  double diff = 0.0;
  for (std::size_t i = 0; i <= 800; ++i) diff = std::max(diff, std::abs((*r.solution)[i] - ref.x[i]));
  EXPECT_LT(diff, 1e-4);
}

TEST(Solve, ClassicalSingularSource) {
  const ProblemSpec p = inverse_sqrt(2.0, 1.0, 0.05);
  SolveOptions o;
  o.grid_size = 801;
  o.m_schedule = {64, 128, 256};
  const SolveReport r = solve(p, o);
  const double shift = 1.0 / 256.0;
  const auto ref = testing::solve_classical(
      [&](double t, double x) { return p.f(t, std::max(x, 0.0) + shift); }, 1.0, 800,
      std::vector<double>(r.solution->values().begin(), r.solution->values().end()));
  double diff = 0.0;
  for (std::size_t i = 0; i <= 800; ++i) diff = std::max(diff, std::abs((*r.solution)[i] - ref.x[i]));
  EXPECT_LT(diff, 1e-4);
}

TEST(Solve, ExampleBoundsHold) {
  const ProblemSpec p = example_problem(0.009, 1.0);
  SolveOptions o;
  o.m_schedule = {16, 32, 64, 128};
  const SolveReport r = solve(p, o);
  const auto& x = *r.solution;
  EXPECT_GT(r.epsilon, 0.3);
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_GE(x[i], r.stated_lower_bound[i]);
    EXPECT_GE(x[i] + 1e-5, r.lower_bound[i]);
    EXPECT_LE(x[i], 1.0 - r.epsilon);
    if (i + 1 < x.size()) EXPECT_GT(x[i], 0.0);
  }
  EXPECT_LE(std::abs(r.boundary_value), 1e-8);
  EXPECT_LT(r.residual_regularized, 1e-3);
  for (const auto& c : r.checks) {
    if (c.name == "lower_bound" || c.name == "upper_bound" || c.name == "dirichlet_at_one" ||
        c.name == "neumann_at_zero" || c.name == "adaptive_fixed_point") {
      EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
    }
  }
}

TEST(Solve, CertifiedThrowsWithReport) {
  const ProblemSpec p = example_problem(0.009, 1.0);
  SolveOptions o;
  o.grid_size = 101;
  o.m_schedule = {16, 32};
  try {
    solve_certified(p, o);
    FAIL() << "expected CertificationError";
  } catch (const CertificationError& e) {
    EXPECT_FALSE(e.report().certified);
    EXPECT_FALSE(e.report().violations().empty());
  }
}

}  // namespace
}  // namespace fbvp
