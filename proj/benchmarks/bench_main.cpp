#include <benchmark/benchmark.h>

#include "imd/exact.hpp"
#include "imd/laplace.hpp"
#include "imd/limits.hpp"
#include "imd/phase.hpp"
#include "imd/thermo.hpp"

namespace {

void BM_MonomerLaw(benchmark::State& state) {
  const imd::ModelParams params(0.2, 0.5);
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(imd::exact::MonomerLaw(N, params).log_Z());
  state.SetComplexityN(N);
}
BENCHMARK(BM_MonomerLaw)->RangeMultiplier(10)->Range(100, 100000)->Complexity();

void BM_GaussianRepLogZ(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(imd::laplace::gaussian_rep_logZ(N, 0.5));
}
BENCHMARK(BM_GaussianRepLogZ)->Arg(2)->Arg(101)->Arg(10000);

void BM_Classify(benchmark::State& state) {
  const imd::ModelParams params(-0.4, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(imd::phase::classify(params));
}
BENCHMARK(BM_Classify);

void BM_GammaPoint(benchmark::State& state) {
  const double J = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(imd::phase::gamma_point(J));
}
BENCHMARK(BM_GammaPoint)->Arg(2)->Arg(50);

void BM_VariationalPressure(benchmark::State& state) {
  const imd::ModelParams params(0.2, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(imd::thermo::variational_pressure(params));
}
BENCHMARK(BM_VariationalPressure);

void BM_KsDistanceQuartic(benchmark::State& state) {
  const auto cp = imd::phase::find_critical_point();
  const auto law = imd::limits::scaled_law(static_cast<int>(state.range(0)),
                                           imd::ModelParams(cp.h_c, cp.J_c), 0.75, cp.m_c);
  const imd::limits::Quartic target{cp.lambda_c};
  imd::limits::limit_cdf(target, 0.0);  // builds the shared quadrature table
  for (auto _ : state) benchmark::DoNotOptimize(imd::limits::ks_distance(law, target));
}
BENCHMARK(BM_KsDistanceQuartic)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
