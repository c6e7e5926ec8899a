#include <gtest/gtest.h>

#include <cmath>

#include "fbvp/errors.hpp"
#include "fbvp/green.hpp"
#include "fbvp/quad.hpp"

namespace fbvp {
namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

struct Case {
  double mu, omega;
};

class GreenGrid : public ::testing::TestWithParam<Case> {};

TEST_P(GreenGrid, BranchesAgreeOnDiagonal) {
  const GreenFunction g({GetParam().mu, GetParam().omega});
  for (double t = 0.0; t <= 1.0; t += 0.01) {
    const double below = g.left_factor(t) * g.memory_kernel(1.0 - t);  // tau >= t branch
    EXPECT_NEAR(g(t, t), below, 1e-12) << t;
  }
}

TEST_P(GreenGrid, VanishesOnBoundary) {
  const GreenFunction g({GetParam().mu, GetParam().omega});
  for (double s = 0.0; s <= 1.0; s += 0.01) {
    EXPECT_NEAR(g(1.0, s), 0.0, 1e-12) << s;
    EXPECT_NEAR(g(s, 1.0), 0.0, 1e-12) << s;
  }
}

TEST_P(GreenGrid, BoundedAndNonnegative) {
  const GreenFunction g({GetParam().mu, GetParam().omega});
  const double cap = g.emm_at_omega();
  for (int i = 0; i <= 200; ++i) {
    for (int k = 0; k <= 200; ++k) {
      const double v = g(i / 200.0, k / 200.0);
      EXPECT_GE(v, -1e-12);
      EXPECT_LE(v, cap + 1e-12);
      if (i <= 198 && k <= 198) EXPECT_GT(v, 0.0) << i << " " << k;
    }
  }
}

TEST_P(GreenGrid, MassIsIntegralOfKernel) {
  const GreenFunction g({GetParam().mu, GetParam().omega});
  for (double t : {0.0, 0.2, 0.5, 0.8, 1.0}) {
    double total = 0.0;
    for (auto [a, b] : {std::pair{0.0, t}, std::pair{t, 1.0}}) {
      if (!(a < b)) continue;
      QuadRequest req;
      req.integrand = [&](double tau) { return g(t, tau); };
      req.a = a;
      req.b = b;
      req.abs_tol = 1e-13;
      req.rel_tol = 1e-13;
      req.singular_left = req.singular_right = true;
      total += integrate(req).value;
    }
    EXPECT_NEAR(total, g.mass(t), 1e-10) << t;
  }
}

TEST_P(GreenGrid, SigmaForms) {
  const GreenFunction g({GetParam().mu, GetParam().omega});
  double prev = g.sigma(0.0);
  for (double t = 0.01; t < 1.0; t += 0.01) {
    const double s = g.sigma(t);
    if (s > 1e-6) EXPECT_LT(rel(s, g.sigma_reduced(t)), 1e-10) << t;
    EXPECT_LT(s, prev);
    prev = s;
    EXPECT_LT(rel(g.sigma_complement(1.0 - t), g.sigma_reduced(t)), 1e-9) << t;
  }
  EXPECT_EQ(g.sigma(1.0), 0.0);
}

INSTANTIATE_TEST_SUITE_P(MuOmega, GreenGrid,
                         ::testing::Values(Case{1.1, 0.5}, Case{1.1, 2}, Case{1.1, 10}, Case{1.5, 0.5},
                                           Case{1.5, 2}, Case{1.5, 10}, Case{1.9, 0.5}, Case{1.9, 2},
                                           Case{1.9, 10}, Case{2.0, 0.5}, Case{2.0, 2}, Case{2.0, 10}));

TEST(Green, FrozenValues) {
  const KernelParams p(1.9, 2.0);
  EXPECT_LT(rel(sigma(p, 0.5), 0.514645696401292459), 1e-13);
  EXPECT_LT(rel(sigma(p, 0.0), 0.66951287256359391908), 1e-13);
  EXPECT_EQ(sigma(p, 1.0), 0.0);
  EXPECT_LT(rel(green_eval(p, 0.0, 0.0), 0.65181821780044557596), 1e-13);
  EXPECT_LT(rel(green_eval(p, 0.5, 0.25), 0.25684246992135866291), 1e-12);
  EXPECT_LT(rel(green_eval({1.5, 0.5}, 0.3, 0.7), 0.47962315293421516028), 1e-12);
  EXPECT_EQ(green_eval(p, 0.3, 1.0), 0.0);
  EXPECT_NEAR(green_eval(p, 1.0, 0.4), 0.0, 1e-15);
  EXPECT_LT(rel(green_mass(p, 0.5), 0.2200256655889471068), 1e-13);
  EXPECT_LT(rel(green_mass({2.0, 1.0}, 0.0), 0.35194572633611460043), 1e-13);
  EXPECT_EQ(green_mass(p, 1.0), 0.0);
}

TEST(Green, SigmaComplementNearOne) {
  const GreenFunction g({1.9, 2.0});
  EXPECT_LT(rel(g.sigma_complement(0.001), 0.0015234139460669154233), 1e-12);
  // sigma(1 - s) ~ s E_{mu,mu}(omega) for small s
  const double s = 1e-12;
  EXPECT_LT(rel(g.sigma_complement(s), s * g.emm_at_omega()), 1e-9);
}

TEST(Green, BoundProfileScaling) {
  const GreenFunction g({1.9, 2.0});
  EXPECT_LT(rel(g.bound_profile(0.5) * 2.0, g.mass(0.5)), 1e-15);
  const GreenFunction one({1.5, 1.0});
  EXPECT_LT(rel(one.bound_profile(0.3), one.mass(0.3)), 1e-15);
}

TEST(Green, NeumannAtZero) {
  const GreenFunction g({1.9, 2.0});
  double prev = 1.0;
  for (double h = 1e-1; h > 1e-5; h /= 10.0) {
    const double dq = std::abs(g.mass(h) - g.mass(0.0)) / h;
    EXPECT_LT(dq, prev);
    prev = dq;
  }
  EXPECT_LT(prev, 1e-4);
}

TEST(Green, DomainErrors) {
  EXPECT_THROW(KernelParams(1.0, 2.0), DomainError);
  EXPECT_THROW(KernelParams(2.1, 2.0), DomainError);
  EXPECT_THROW(KernelParams(1.5, 0.0), DomainError);
  const KernelParams p(1.9, 2.0);
  EXPECT_THROW(sigma(p, -0.1), DomainError);
  EXPECT_THROW(green_eval(p, 0.5, 1.2), DomainError);
  EXPECT_THROW(green_mass(p, 1.5), DomainError);
}

}  // namespace
}  // namespace fbvp
