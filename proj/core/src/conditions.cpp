#include "fbvp/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "fbvp/parallel.hpp"
#include "fbvp/quad.hpp"

namespace fbvp {

namespace {

constexpr double kExampleMu = 1.9;
constexpr double kExampleOmega = 2.0;

// int_0^1 q(t) g(sigma(t)) dt split at 1/2; the right half runs in s = 1 - t.
template <typename G>
double integrate_q(const ProblemSpec& problem, const GreenFunction& green, G&& g, double tol) {
  QuadRequest left;
  left.integrand = [&](double t) { return problem.q(t) * g(green.sigma(t)); };
  left.a = 0.0;
  left.b = 0.5;
  left.abs_tol = tol;
  left.rel_tol = tol;
  left.singular_left = true;
  left.singular_right = true;
  QuadRequest right = left;
  right.integrand = [&](double s) {
    const double q = problem.q_reflected ? problem.q_reflected(s) : problem.q(1.0 - s);
    return q * g(green.sigma_complement(s));
  };
  return integrate(left).value + integrate(right).value;
}

double weighted(const ProblemSpec& problem, const GreenFunction& green, double c, double tol) {
  return integrate_q(problem, green, [&](double s) { return problem.u(c * s); }, tol);
}

double chi_with(const ProblemSpec& problem, const GreenFunction& green, double r, double tol) {
  if (!(r > 0.0)) throw DomainError("chi: r must be positive");
  const double c = problem.gamma(r) / (problem.params.omega() * green.e1_at_omega());
  return weighted(problem, green, c, tol);
}

// Points in (0, top] crowded toward 0 geometrically, top included.
std::vector<double> log_grid(double bottom, double top, std::size_t n) {
  std::vector<double> out(n);
  const double ratio = std::log(top / bottom);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = bottom * std::exp(ratio * static_cast<double>(k) / static_cast<double>(n - 1));
  }
  out.back() = top;
  return out;
}

// t samples crowded toward both ends, symmetric about 1/2 which is included.
std::vector<double> t_grid(std::size_t n) {
  const std::size_t half = std::max<std::size_t>(n / 2, 2);
  std::vector<double> left = log_grid(1e-8, 0.5, half);
  std::vector<double> out = left;
  for (auto it = left.rbegin() + 1; it != left.rend(); ++it) out.push_back(1.0 - *it);
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

double q_integral(const ProblemSpec& problem) {
  problem.validate();
  const GreenFunction green(problem.params);
  return integrate_q(problem, green, [](double) { return 1.0; }, 1e-10);
}

double weighted_q_integral(const ProblemSpec& problem, double c) {
  problem.validate();
  const GreenFunction green(problem.params);
  return weighted(problem, green, c, 1e-10);
}

double chi(const ProblemSpec& problem, double r) {
  problem.validate();
  const GreenFunction green(problem.params);
  return chi_with(problem, green, r, 1e-10);
}

double epsilon_ratio(const ProblemSpec& problem, double eps) {
  const GreenFunction green(problem.params);
  const double r = problem.R + eps;
  const double factor = 1.0 + problem.v(r) / problem.u(r);
  return (problem.R - eps) / (green.emm_at_omega() * chi_with(problem, green, r, 1e-10) * factor);
}

ConditionReport check_A2(const ProblemSpec& problem, const ConditionOptions& options) {
  problem.validate();
  const GreenFunction green(problem.params);
  const double R = problem.R;
  const double omega = problem.params.omega();
  const double slack = options.slack;
  ConditionReport report;
  auto add = [&](std::string name, bool passed, std::string detail) {
    report.verdicts.push_back(Verdict{std::move(name), passed, std::move(detail)});
  };

  // Integrability.
  bool integrable = true;
  std::string integrable_detail;
  try {
    report.int_q = integrate_q(problem, green, [](double) { return 1.0; }, options.quad_tol);
    for (double c : options.probes) {
      report.int_qu.push_back({c, weighted(problem, green, c, options.quad_tol)});
    }
    integrable_detail = "int q = " + fmt(report.int_q);
    for (const auto& p : report.int_qu) {
      integrable_detail += ", int q u(" + fmt(p.c) + " sigma) = " + fmt(p.value);
      integrable = integrable && std::isfinite(p.value);
    }
    integrable = integrable && std::isfinite(report.int_q);
  } catch (const QuadratureError& e) {
    integrable = false;
    integrable_detail = e.what();
  }
  add("A1.integrable", integrable, integrable_detail);

  const std::vector<double> ts = t_grid(options.t_samples);
  std::vector<double> xs_low = log_grid(1e-8 * R, R, options.x_samples);
  std::vector<double> xs_all = xs_low;
  for (double x : log_grid(R, 100.0 * R, options.x_samples / 2 + 2)) {
    if (x > R) xs_all.push_back(x);
  }

  report.gamma_R = problem.gamma(R);

  // Pointwise clauses on the t x x grid, one row per t.
  struct RowResult {
    double growth_excess = 0.0;  // worst |f| / (q (u + v)) - 1
    double lower_deficit = 0.0;  // worst (gamma_R - f) / gamma_R
    double growth_t = 0.0, growth_x = 0.0, lower_t = 0.0, lower_x = 0.0;
    bool finite = true;
  };
  std::vector<RowResult> rows(ts.size());
  parallel_for(ts.size(), [&](std::size_t i) {
    const double t = ts[i];
    const double q = problem.q(t);
    RowResult& row = rows[i];
    row.growth_excess = -1.0;
    row.lower_deficit = -std::numeric_limits<double>::infinity();
    for (double x : xs_all) {
      const double f = problem.f(t, x);
      const double bound = q * (problem.u(x) + problem.v(x));
      if (!std::isfinite(f) || !std::isfinite(bound)) {
        row.finite = false;
        continue;
      }
      const double excess = std::abs(f) / bound - 1.0;
      if (excess > row.growth_excess) {
        row.growth_excess = excess;
        row.growth_t = t;
        row.growth_x = x;
      }
      if (x <= R) {
        const double deficit = (report.gamma_R - f) / std::abs(report.gamma_R);
        if (deficit > row.lower_deficit) {
          row.lower_deficit = deficit;
          row.lower_t = t;
          row.lower_x = x;
        }
      }
    }
  });
  RowResult worst;
  worst.growth_excess = -1.0;
  worst.lower_deficit = -std::numeric_limits<double>::infinity();
  for (const RowResult& row : rows) {
    worst.finite = worst.finite && row.finite;
    if (row.growth_excess > worst.growth_excess) {
      worst.growth_excess = row.growth_excess;
      worst.growth_t = row.growth_t;
      worst.growth_x = row.growth_x;
    }
    if (row.lower_deficit > worst.lower_deficit) {
      worst.lower_deficit = row.lower_deficit;
      worst.lower_t = row.lower_t;
      worst.lower_x = row.lower_x;
    }
  }
  add("A1.growth_bound", worst.finite && worst.growth_excess <= slack,
      (worst.finite ? "" : "non-finite samples; ") + std::string("max |f|/(q(u+v)) - 1 = ") +
          fmt(worst.growth_excess) + " at t = " + fmt(worst.growth_t) + ", x = " + fmt(worst.growth_x));

  bool u_dec = true, v_inc = true;
  for (std::size_t k = 1; k < xs_all.size(); ++k) {
    u_dec = u_dec && problem.u(xs_all[k]) <= problem.u(xs_all[k - 1]);
    v_inc = v_inc && problem.v(xs_all[k]) >= problem.v(xs_all[k - 1]);
  }
  add("A1.u_decreasing", u_dec, "sampled on " + std::to_string(xs_all.size()) + " points");
  add("A1.v_increasing", v_inc, "sampled on " + std::to_string(xs_all.size()) + " points");

  bool gamma_ok = true;
  double prev = problem.gamma(xs_all.front());
  for (double r : xs_all) {
    const double g = problem.gamma(r);
    gamma_ok = gamma_ok && g > 0.0 && g <= prev;
    prev = g;
  }
  add("A2.gamma_positive_nonincreasing", gamma_ok, "gamma_R = " + fmt(report.gamma_R));

  add("A2.lower_bound", worst.finite && report.gamma_R > 0.0 && worst.lower_deficit <= slack,
      "max (gamma_R - f)/gamma_R = " + fmt(worst.lower_deficit) + " at t = " + fmt(worst.lower_t) +
          ", x = " + fmt(worst.lower_x));

  report.a2_threshold = report.gamma_R * green.emm1_at_omega() / (omega * green.e1_at_omega());
  add("A2.threshold", report.gamma_R > 0.0 && R > report.a2_threshold,
      "R - threshold = " + fmt(R - report.a2_threshold));

  bool ratio_ok = false;
  try {
    report.chi_R = chi_with(problem, green, R, options.quad_tol);
    report.ratio_factor = 1.0 + problem.v(R) / problem.u(R);
    report.a2_ratio = R / (green.emm_at_omega() * report.chi_R * report.ratio_factor);
    ratio_ok = report.a2_ratio > 1.0;
    add("A2.ratio", ratio_ok, "ratio - 1 = " + fmt(report.a2_ratio - 1.0));
  } catch (const Error& e) {
    add("A2.ratio", false, e.what());
  }

  report.pass = std::all_of(report.verdicts.begin(), report.verdicts.end(),
                            [](const Verdict& v) { return v.passed; });
  if (report.pass) {
    try {
      report.epsilon_max = epsilon_select(problem);
    } catch (const NoAdmissibleEpsilon& e) {
      add("A2.epsilon", false, e.what());
      report.pass = false;
    }
  }
  std::ostringstream os;
  os << (report.pass ? "no violation found on " : "sampled ") << ts.size() << " t-samples in [1e-8, 1 - 1e-8] x "
     << xs_all.size() << " x-samples in [" << fmt(xs_all.front()) << ", " << fmt(xs_all.back()) << "]";
  report.sampling = os.str();
  return report;
}

double epsilon_select(const ProblemSpec& problem) {
  problem.validate();
  const GreenFunction green(problem.params);
  const double R = problem.R;
  const double gamma_R = problem.gamma(R);
  const double upper =
      R - gamma_R * green.emm1_at_omega() / (problem.params.omega() * green.e1_at_omega());
  const double delta = 1e-6 * R;
  const auto top = static_cast<long long>(std::floor(upper / delta));
  if (!(gamma_R > 0.0) || top < 1) {
    throw NoAdmissibleEpsilon("epsilon_select: empty interval, R - threshold = " + fmt(upper), upper, 0.0);
  }
  auto ok = [&](long long k) { return epsilon_ratio(problem, static_cast<double>(k) * delta) >= 1.0; };
  if (ok(top)) return static_cast<double>(top) * delta;
  const double floor_ratio = epsilon_ratio(problem, delta);
  if (floor_ratio < 1.0) {
    throw NoAdmissibleEpsilon("epsilon_select: ratio " + fmt(floor_ratio) + " < 1 at eps = " + fmt(delta),
                              upper, floor_ratio);
  }
  long long lo = 1, hi = top;
  while (hi - lo > 1) {
    const long long mid = lo + (hi - lo) / 2;
    (ok(mid) ? lo : hi) = mid;
  }
  return static_cast<double>(lo) * delta;
}

SigmaProductMax max_sigma_product(const KernelParams& params) {
  const GreenFunction green(params);
  auto product = [&](double t) {
    const double left = t <= 0.5 ? green.sigma(t) : green.sigma_complement(1.0 - t);
    const double right = t >= 0.5 ? green.sigma(1.0 - t) : green.sigma_complement(t);
    return left * right;
  };
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = 0.0, b = 1.0;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double fc = product(c), fd = product(d);
  while (b - a > 1e-10) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = product(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = product(d);
    }
  }
  SigmaProductMax best{0.5 * (a + b), product(0.5 * (a + b))};
  if (const double mid = product(0.5); mid > best.value) best = {0.5, mid};
  return best;
}

ProblemSpec example_problem(double lambda, double R) {
  if (!(lambda > 0.0)) throw DomainError("example_problem: lambda must be positive");
  if (!(R > 0.0)) throw DomainError("example_problem: R must be positive");
  const KernelParams params(kExampleMu, kExampleOmega);
  auto green = std::make_shared<const GreenFunction>(params);
  const double gamma_coef = 1.0 / std::sqrt(max_sigma_product(params).value);

  auto q = [green, lambda](double t) {
    const double left = t <= 0.5 ? green->sigma(t) : green->sigma_complement(1.0 - t);
    const double right = t >= 0.5 ? green->sigma(1.0 - t) : green->sigma_complement(t);
    return lambda / std::sqrt(left * right);
  };
  ProblemSpec p{params,
                [q, R](double t, double x) { return q(t) * (std::pow(x, -0.2) - x + R); },
                q,
                [](double x) { return std::pow(x, -0.2); },
                [R](double x) { return x + R; },
                [lambda, gamma_coef](double r) { return gamma_coef * lambda * std::pow(r, -0.2); },
                R,
                "example",
                q};
  return p;
}

std::vector<ExampleConstant> example_constants(double lambda, double R) {
  const ProblemSpec p = example_problem(lambda, R);
  const GreenFunction green(p.params);
  const double omega = p.params.omega();
  const double int_q = integrate_q(p, green, [](double) { return 1.0; }, 1e-12) / lambda;
  const double int_qu = weighted(p, green, 1.0, 1e-12) / lambda;
  const double gamma_coef = 1.0 / std::sqrt(max_sigma_product(p.params).value);
  const double chi_coef =
      chi_with(p, green, R, 1e-12) / (std::pow(lambda, 0.8) * std::pow(R, 1.0 / 25.0));
  const double denom = green.emm_at_omega() * chi_coef;
  const double win1 = std::pow(denom, 1.25);
  const double win2 = omega * green.e1_at_omega() / (gamma_coef * green.emm1_at_omega());
  std::vector<ExampleConstant> rows{
      {"int_q_over_lambda", int_q, 3.07853, 0.0},
      {"int_q_u_coefficient", int_qu, 4.37043, 0.0},
      {"gamma_coefficient", gamma_coef, 1.94308, 0.0},
      {"chi_coefficient", chi_coef, 5.21001, 0.0},
      {"ratio_denominator_coefficient", denom, 7.94329, 0.0},
      {"lambda_window_coefficient_1", win1, 13.3352, 0.0},
      {"lambda_window_coefficient_2", win2, 3.59596, 0.0},
  };
  for (auto& row : rows) row.rel_dev = std::abs(row.computed - row.published) / std::abs(row.published);
  return rows;
}

LambdaWindow lambda_window(double R) {
  // q, gamma and hence chi scale as lambda, lambda and lambda^{4/5}; solve
  // both clauses for lambda at lambda = 1.
  const ProblemSpec p = example_problem(1.0, R);
  const GreenFunction green(p.params);
  const double chi_unit = chi_with(p, green, R, 1e-12);
  const double factor = 1.0 + p.v(R) / p.u(R);
  LambdaWindow w;
  w.hi_ratio = std::pow(R / (green.emm_at_omega() * chi_unit * factor), 1.25);
  w.hi_threshold = R * p.params.omega() * green.e1_at_omega() / (p.gamma(R) * green.emm1_at_omega());
  w.hi = std::min(w.hi_ratio, w.hi_threshold);
  return w;
}

LambdaWindow lambda_window_published(double R) {
  if (!(R > 0.0)) throw DomainError("lambda_window: R must be positive");
  const double r65 = std::pow(R, 1.2);
  LambdaWindow w;
  w.hi_ratio = r65 / (13.3352 * std::pow(1.0 + 2.0 * r65, 1.25));
  w.hi_threshold = 3.59596 * r65;
  w.hi = std::min(w.hi_ratio, w.hi_threshold);
  return w;
}

}  // namespace fbvp
