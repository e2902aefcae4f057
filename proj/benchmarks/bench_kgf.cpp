#include <benchmark/benchmark.h>

#include "kgf/kgf.hpp"

using namespace kgf;

namespace {

FieldCombination wave(std::vector<double> k, double amp = 1.0) {
  return FieldCombination::single(SmoothField(PlaneWave{std::move(k), amp, 0.0}));
}

ProblemSpec separable(int n) {
  ProblemSpec s;
  s.n = n;
  s.gamma = 0.5;
  s.lambda = 1.0;
  s.phi = {wave(n == 3 ? std::vector<double>{0.6, 0.8, 0.0} : std::vector<double>{0.6, 0.8})};
  return s;
}

ProblemSpec mixed() {
  ProblemSpec s;
  s.n = 3;
  s.m = 2;
  s.gamma = 0.25;
  s.lambda = 0.5;
  auto p0 = wave({1, 0, 0});
  p0.add(FieldCombination::single(SmoothField(SineProduct{{0.5, 0.7, 0.3}, 0.5})));
  s.phi = {p0, wave({0, 0.8, 0.6}, 0.7)};
  return s;
}

}  // namespace

static void BM_BesselClifford(benchmark::State& st) {
  const double z = double(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(bessel_clifford<double>(0.7, z));
}
BENCHMARK(BM_BesselClifford)->Arg(1)->Arg(10)->Arg(40);

static void BM_BesselCliffordQuad(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(bessel_clifford<quad>(quad(0.7), quad(12.5)));
}
BENCHMARK(BM_BesselCliffordQuad);

static void BM_RadialRuleBuild(benchmark::State& st) {
  const int order = int(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(make_radial_rule<double>(-0.3, order, 2.0));
}
BENCHMARK(BM_RadialRuleBuild)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_BallKernelIntegral(benchmark::State& st) {
  auto f = wave({0.6, 0.8, 0.0});
  const std::vector<double> x{0.1, 0.2, 0.3};
  auto& rr = radial_rule<double>(0.5, int(st.range(0)), 2.0);
  auto& sr = sphere_rule<double>(3, 16);
  for (auto _ : st) benchmark::DoNotOptimize(ball_kernel_integral<double>(f, x, 1.3, 0.5, 1.5, 1.0, rr, sr));
}
BENCHMARK(BM_BallKernelIntegral)->Arg(32)->Arg(64);

static void BM_SolvePoint(benchmark::State& st) {
  const int n = int(st.range(0));
  SolutionEvaluator<double> u(separable(n));
  const std::vector<double> x(n, 0.2);
  for (auto _ : st) benchmark::DoNotOptimize(u(x, 1.4));
}
BENCHMARK(BM_SolvePoint)->Arg(2)->Arg(3)->Unit(benchmark::kMicrosecond);

static void BM_SolveMixed(benchmark::State& st) {
  SolverOptions o;
  o.radial_order = 40;
  o.sphere_order = 16;
  SolutionEvaluator<double> u(mixed(), st.range(0) ? Method::transmutation : Method::direct, o);
  const std::vector<double> x{0.1, 0.2, 0.3};
  for (auto _ : st) benchmark::DoNotOptimize(u(x, 1.0));
}
BENCHMARK(BM_SolveMixed)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_ResidualQuad(benchmark::State& st) {
  auto s = separable(3);
  SolverOptions o;
  o.sphere_mode = SphereMode::analytic;
  auto e = std::make_shared<const SolutionEvaluator<quad>>(s, Method::direct, o);
  PointFn<quad> u = [e](std::span<const quad> x, quad t) { return (*e)(x, t); };
  const std::vector<quad> x{0.1, 0.2, 0.3};
  for (auto _ : st) benchmark::DoNotOptimize(residual_iterated_operator<quad>(u, s, x, quad(1.0), 1, quad(1e-3)));
}
BENCHMARK(BM_ResidualQuad)->Unit(benchmark::kMillisecond);

static void BM_RecurrenceConstants(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(recurrence_constants(int(st.range(0))));
}
BENCHMARK(BM_RecurrenceConstants)->Arg(8)->Arg(20);

BENCHMARK_MAIN();
