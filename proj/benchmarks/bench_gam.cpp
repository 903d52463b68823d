#include <benchmark/benchmark.h>

#include "gam/constellation.hpp"
#include "gam/metrics.hpp"
#include "gam/optimizer.hpp"
#include "gam/schemes.hpp"

namespace {

using namespace gam;

void bm_golden_angle_phase(benchmark::State& state) {
  std::int64_t n = 0;
  for (auto _ : state) benchmark::DoNotOptimize(golden_angle_phase(n++));
}
BENCHMARK(bm_golden_angle_phase);

void bm_gen_gb_hr(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gen_gb_hr(state.range(0), PowerBudget(1.0)));
}
BENCHMARK(bm_gen_gb_hr)->Arg(256)->Arg(4096);

void bm_mi_quadrature(benchmark::State& state) {
  const auto c = gen_gb_hr(state.range(0), PowerBudget(1.0));
  const auto ch = AwgnChannel::unit_power(255.0);
  for (auto _ : state) benchmark::DoNotOptimize(mi_quadrature(c, ch, 1e-6).bits);
}
BENCHMARK(bm_mi_quadrature)->Arg(16)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void bm_mi_monte_carlo(benchmark::State& state) {
  const auto c = gen_gb_hr(state.range(0), PowerBudget(1.0));
  const auto ch = AwgnChannel::unit_power(255.0);
  for (auto _ : state) benchmark::DoNotOptimize(mi_monte_carlo(c, ch, 100000, 1).bits);
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(bm_mi_monte_carlo)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void bm_ser_monte_carlo(benchmark::State& state) {
  const auto c = gen_disc(DiscSpec{1, 256, PowerBudget(1.0)});
  const auto ch = AwgnChannel::unit_power(from_db(25.0));
  for (auto _ : state) benchmark::DoNotOptimize(ser_monte_carlo(c, ch, 100000, 1).ser);
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(bm_ser_monte_carlo)->Unit(benchmark::kMillisecond);

void bm_optimize_g2(benchmark::State& state) {
  OptimizationProblem p;
  p.formulation = Formulation::g2;
  p.n_points = 16;
  p.snr = 15.0;
  for (auto _ : state) benchmark::DoNotOptimize(optimize(p).mi_bits);
}
BENCHMARK(bm_optimize_g2)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
