#include <benchmark/benchmark.h>

#include "twdirac/equations.hpp"
#include "twdirac/evolution.hpp"
#include "twdirac/harness.hpp"

using namespace twdirac;

static void BM_SpinorBoost(benchmark::State& state) {
  const BoostSpec b = BoostSpec::from_beta(Vec3(0.1, -0.2, 0.15));
  for (auto _ : state) benchmark::DoNotOptimize(spinor_boost(b, BoostMode::Exact).matrix);
}
BENCHMARK(BM_SpinorBoost);

static void BM_Covariance(benchmark::State& state) {
  const BoostSpec b = BoostSpec::from_beta(Vec3(0.1, -0.2, 0.15));
  for (auto _ : state) benchmark::DoNotOptimize(check_covariance(b));
}
BENCHMARK(BM_Covariance);

static void BM_TravelingDiracResidual(benchmark::State& state) {
  const BoostSpec b = BoostSpec::from_beta(Vec3(0.05, 0.1, -0.08));
  const AnalyticField f = boost_field(dirac_plane_wave(Vec3(0.1, 0.05, -0.2), 1.0, 0), b);
  const FieldOperator op = traveling_dirac_op(1.0, b, BoostMode::Exact);
  const FourVector x{0.3, -1.2, 0.7, 1.4};
  for (auto _ : state) benchmark::DoNotOptimize(op.apply(f, x));
}
BENCHMARK(BM_TravelingDiracResidual);

static void BM_NrResidualPlan(benchmark::State& state) {
  const BoostSpec b = BoostSpec::from_beta(Vec3(0, 0, 0.05));
  const auto data = stripped_boosted_plane_wave(Vec3(0, 0, 0.025), 1.0, b);
  const FieldOperator op = nr_schrodinger_traveling_op(1.0, b);
  const SamplePlan plan{};
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_residual(op, data.big, plan, 1.0));
}
BENCHMARK(BM_NrResidualPlan);

static void BM_Fft(benchmark::State& state) {
  const long n = state.range(0);
  std::vector<cplx> a(n);
  for (long i = 0; i < n; ++i) a[i] = cplx(std::sin(0.1 * i), std::cos(0.2 * i));
  for (auto _ : state) {
    fft_radix2(a, -1);
    fft_radix2(a, +1);
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_Fft)->Arg(256)->Arg(4096);

static void BM_Propagate1000(benchmark::State& state) {
  const GridState g = gaussian_grid_state(1, 128, 40.0, Vec3(0, 0, 0.5), 2.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(propagate(g, Scheme::Traveling, Vec3(0, 0, 0.05), 1.0, 0.05, 1000));
}
BENCHMARK(BM_Propagate1000);

BENCHMARK_MAIN();
