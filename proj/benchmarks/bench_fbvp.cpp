#include <benchmark/benchmark.h>

#include <cmath>

#include "fbvp/conditions.hpp"
#include "fbvp/green.hpp"
#include "fbvp/quad.hpp"
#include "fbvp/solver.hpp"
#include "fbvp/specfun.hpp"

namespace {

using namespace fbvp;

void BM_MittagLefflerSeries(benchmark::State& state) {
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mittag_leffler({1.9, 1.9}, x));
}
BENCHMARK(BM_MittagLefflerSeries)->Arg(1)->Arg(10)->Arg(100);

void BM_MittagLefflerTable(benchmark::State& state) {
  const MittagLeffler e({1.9, 1.9});
  const double x = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(e(x));
}
BENCHMARK(BM_MittagLefflerTable)->Arg(1)->Arg(10)->Arg(100);

void BM_GreenEval(benchmark::State& state) {
  const GreenFunction g({1.9, 2.0});
  double t = 0.0;
  for (auto _ : state) {
    t = t > 0.98 ? 0.01 : t + 0.0137;
    benchmark::DoNotOptimize(g(t, 1.0 - t));
  }
}
BENCHMARK(BM_GreenEval);

void BM_QuadSingular(benchmark::State& state) {
  QuadRequest req;
  req.integrand = [](double x) { return std::pow(x, -0.5) * std::cos(x); };
  req.singular_left = true;
  req.abs_tol = req.rel_tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(integrate(req).value);
}
BENCHMARK(BM_QuadSingular)->Arg(6)->Arg(10)->Arg(13);

void BM_OperatorSetup(benchmark::State& state) {
  const ProblemSpec p = example_problem(0.009, 1.0);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    DiscreteOperator op(p, n);
    benchmark::DoNotOptimize(op.quadrature_nodes());
  }
}
BENCHMARK(BM_OperatorSetup)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

void BM_OperatorApply(benchmark::State& state) {
  const ProblemSpec p = example_problem(0.009, 1.0);
  const auto n = static_cast<std::size_t>(state.range(0));
  const DiscreteOperator op(p, n);
  const GridFunction x = GridFunction::sample(n, [&](double t) { return 0.1 * op.green().mass(t); });
  const Truncation trunc(64, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(op.apply(trunc, x));
}
BENCHMARK(BM_OperatorApply)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
