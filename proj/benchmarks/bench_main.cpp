#include <benchmark/benchmark.h>

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "hamcert/constants.hpp"
#include "hamcert/expr.hpp"
#include "hamcert/greens3.hpp"
#include "hamcert/problem_file.hpp"
#include "hamcert/quadopt.hpp"
#include "hamcert/solver.hpp"

using namespace hamcert;

namespace {

const ProblemFile& golden() {
  static const ProblemFile pf =
      load_problem(std::string(HAMCERT_PROBLEMS_DIR) + "/exsystch.yaml");
  return pf;
}

void BM_ExprEval(benchmark::State& state) {
  const Expr e = Expr::parse("(u1^2 + u2^2)*(2 + cos(v1*v2))", vars::nonlinearity);
  std::array<double, 5> x{0.3, 0.1, 0.2, 0.4, 0.5};
  for (auto _ : state) {
    x[0] += 1e-9;
    benchmark::DoNotOptimize(e.eval(x));
  }
}
BENCHMARK(BM_ExprEval);

void BM_IntegrateGreenKernel(benchmark::State& state) {
  const KernelSpec k = build_kernel({1.5, 0.5});
  const double t = 0.37;
  for (auto _ : state) {
    const auto r = integrate([&](double s) { return k.value(t, s); }, 0.0, 1.0, k.breakpoints(t));
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_IntegrateGreenKernel);

void BM_Extremize(benchmark::State& state) {
  for (auto _ : state) {
    const auto r = extremize([](double t) { return std::sin(7 * std::numbers::pi * t) * t; }, 0.0,
                             1.0, ExtremumMode::Max);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_Extremize);

void BM_Constants(benchmark::State& state) {
  const SystemProblem& p = golden().problem;
  for (auto _ : state) benchmark::DoNotOptimize(compute_constants(p));
}
BENCHMARK(BM_Constants)->Unit(benchmark::kMillisecond);

void BM_ApplyT(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const HammersteinOperator op(golden().problem, n);
  const GridPair x = random_init(n, 1, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(op.apply(x));
}
BENCHMARK(BM_ApplyT)->Arg(101)->Arg(401)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
