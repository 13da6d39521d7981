#include <benchmark/benchmark.h>

#include <vector>

#include "casimir/casimir.hpp"

using namespace casimir;

namespace {

const BoundaryPair kDD = BoundaryPair::scalar(Condition::dirichlet(), Condition::dirichlet());
const BoundaryPair kCC = BoundaryPair::em(Condition::pec(), Condition::pec());

void BM_HalfOrderBessel(benchmark::State& st) {
  const int l_max = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(special::half_order_bessel(l_max, 3.7));
  st.SetComplexityN(l_max);
}
BENCHMARK(BM_HalfOrderBessel)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_Wigner3jRange(benchmark::State& st) {
  const int l = static_cast<int>(st.range(0));
  std::vector<double> out;
  for (auto _ : st) {
    special::wigner3j_m_range(l, l + 7, l / 3, out);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetComplexityN(l);
}
BENCHMARK(BM_Wigner3jRange)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_ScalarBlock(benchmark::State& st) {
  const Geometry g = Geometry::from_gap(1.0, 2.0, 0.1, Mode::Interior);
  const int l_max = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(assemble_scalar_block(2, 5.0, l_max, g, kDD));
}
BENCHMARK(BM_ScalarBlock)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_EmBlock(benchmark::State& st) {
  const Geometry g = Geometry::from_gap(1.0, 2.0, 0.1, Mode::Interior);
  const int l_max = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(assemble_em_block(2, 5.0, l_max, g, kCC));
}
BENCHMARK(BM_EmBlock)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_TraceOverM(benchmark::State& st) {
  const Geometry g = Geometry::from_gap(1.0, 2.0, 0.2, Mode::Interior);
  const int l_max = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(trace_over_m(2.0, l_max, g, kDD));
}
BENCHMARK(BM_TraceOverM)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_EnergyT0(benchmark::State& st) {
  const Geometry g = Geometry::from_gap(1.0, 2.0, 0.3, Mode::Interior);
  ConvergenceSpec spec;
  spec.rel_tol = 1e-5;
  for (auto _ : st) benchmark::DoNotOptimize(energy_T0(g, kDD, spec));
}
BENCHMARK(BM_EnergyT0)->Unit(benchmark::kMillisecond)->Iterations(3);

void BM_PfaIntegrated(benchmark::State& st) {
  const Geometry g = Geometry::from_gap(1.0, 2.0, 0.05, Mode::Interior);
  const double T = static_cast<double>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(pfa::pfa_free_energy(g, kDD, T));
}
BENCHMARK(BM_PfaIntegrated)->Arg(0)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_Asymptotic(benchmark::State& st) {
  const Geometry g = Geometry::from_gap(1.0, 2.0, 0.05, Mode::Exterior);
  for (auto _ : st) benchmark::DoNotOptimize(asym::energy_asym_T0(g, kCC));
}
BENCHMARK(BM_Asymptotic);

}  // namespace
BENCHMARK_MAIN();
