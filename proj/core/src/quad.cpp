#include "fbvp/quad.hpp"

#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cfloat>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "fbvp/errors.hpp"
#include "fbvp/summation.hpp"

namespace fbvp {

namespace {

// Split point of a panel touching a singular endpoint, measured from that
// endpoint as a fraction of the panel width.
constexpr double kGradingRatio = 0.5;

// |K31 - G15| is not an upper bound on a panel that touches an endpoint
// singularity; its estimate is scaled by this factor.
constexpr double kEndpointErrorFactor = 10.0;

struct PanelRule {
  // Nonnegative Kronrod abscissae; even indices are the embedded Gauss nodes.
  std::array<double, 16> x{};
  std::array<double, 16> wk{};
  std::array<double, 8> wg{};
};

const PanelRule& panel_rule() {
  static const PanelRule rule = [] {
    using boost::math::quadrature::gauss;
    using boost::math::quadrature::gauss_kronrod;
    PanelRule r;
    const auto& kx = gauss_kronrod<double, 31>::abscissa();
    const auto& kw = gauss_kronrod<double, 31>::weights();
    const auto& gw = gauss<double, 15>::weights();
    for (std::size_t i = 0; i < 16; ++i) {
      r.x[i] = kx[i];
      r.wk[i] = kw[i];
    }
    for (std::size_t i = 0; i < 8; ++i) r.wg[i] = gw[i];
    return r;
  }();
  return rule;
}

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool refinable;
};

class Integrator {
 public:
  explicit Integrator(const QuadRequest& req) : req_(req) {}

  Panel evaluate(double a, double b) {
    const PanelRule& rule = panel_rule();
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double kronrod = 0.0;
    double gauss = 0.0;
    const double f0 = sample(c);
    kronrod += rule.wk[0] * f0;
    gauss += rule.wg[0] * f0;
    for (std::size_t i = 1; i < 16; ++i) {
      const double pair = sample(c - h * rule.x[i]) + sample(c + h * rule.x[i]);
      kronrod += rule.wk[i] * pair;
      if (i % 2 == 0) gauss += rule.wg[i / 2] * pair;
    }
    Panel p{a, b, kronrod * h, std::abs((kronrod - gauss) * h), true};
    if ((req_.singular_left && a == req_.a) || (req_.singular_right && b == req_.b)) {
      p.error *= kEndpointErrorFactor;
    }
    // Children must keep every node strictly inside the panel.
    const double scale = std::max(std::abs(a), std::abs(b));
    const double min_width = 1e4 * DBL_EPSILON * scale + 1e4 * DBL_MIN;
    p.refinable = 0.5 * (b - a) > min_width;
    return p;
  }

  long evaluations() const noexcept { return evaluations_; }

 private:
  double sample(double x) {
    if ((req_.singular_left && x <= req_.a) || (req_.singular_right && x >= req_.b)) {
      std::ostringstream os;
      os << "integrate: node " << x << " reached a singular endpoint";
      throw QuadratureError(QuadratureError::Kind::kBudgetExceeded, os.str());
    }
    ++evaluations_;
    const double y = req_.integrand(x);
    if (!std::isfinite(y)) {
      std::ostringstream os;
      os.precision(17);
      os << "integrate: integrand returned " << y << " at x = " << x;
      throw QuadratureError(QuadratureError::Kind::kNonFiniteSample, os.str());
    }
    return y;
  }

  const QuadRequest& req_;
  long evaluations_ = 0;
};

double split_point(const Panel& p, const QuadRequest& req) {
  if (req.singular_left && p.a == req.a) return p.a + kGradingRatio * (p.b - p.a);
  if (req.singular_right && p.b == req.b) return p.b - kGradingRatio * (p.b - p.a);
  return 0.5 * (p.a + p.b);
}

void validate(const QuadRequest& req) {
  if (!req.integrand) throw DomainError("integrate: empty integrand");
  if (!(req.a < req.b) || !std::isfinite(req.a) || !std::isfinite(req.b)) {
    throw DomainError("integrate: require finite a < b");
  }
  if (!(req.abs_tol > 0.0) || !(req.rel_tol > 0.0)) {
    throw DomainError("integrate: tolerances must be positive");
  }
  if (req.max_subdivisions < 1) throw DomainError("integrate: max_subdivisions must be >= 1");
}

}  // namespace

QuadResult integrate(const QuadRequest& req) {
  validate(req);
  Integrator integrator(req);
  // Kept sorted by position; reductions run left to right.
  std::vector<Panel> panels;
  panels.push_back(integrator.evaluate(req.a, req.b));

  for (;;) {
    CompensatedSum value;
    CompensatedSum error;
    for (const Panel& p : panels) {
      value += p.value;
      error += p.error;
    }
    const double target = std::max(req.abs_tol, req.rel_tol * std::abs(value.value()));
    if (error.value() <= target) {
      return QuadResult{value.value(), error.value(), static_cast<int>(panels.size()),
                        integrator.evaluations()};
    }

    std::size_t worst = panels.size();
    for (std::size_t i = 0; i < panels.size(); ++i) {
      if (!panels[i].refinable) continue;
      if (worst == panels.size() || panels[i].error > panels[worst].error) worst = i;
    }
    if (worst == panels.size() || static_cast<int>(panels.size()) >= req.max_subdivisions) {
      std::ostringstream os;
      os << "integrate: tolerance " << target << " not met on (" << req.a << ", " << req.b
         << ") with " << panels.size() << " panels; error estimate " << error.value();
      throw QuadratureError(QuadratureError::Kind::kBudgetExceeded, os.str(), value.value(),
                            error.value());
    }

    const Panel parent = panels[worst];
    const double mid = split_point(parent, req);
    Panel left = integrator.evaluate(parent.a, mid);
    Panel right = integrator.evaluate(mid, parent.b);
    panels[worst] = left;
    panels.insert(panels.begin() + static_cast<std::ptrdiff_t>(worst) + 1, right);
  }
}

}  // namespace fbvp
