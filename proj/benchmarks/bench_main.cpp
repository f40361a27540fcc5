#include <benchmark/benchmark.h>

#include <cmath>

#include "semigrowth/bounds.hpp"
#include "semigrowth/grid.hpp"
#include "semigrowth/increase.hpp"
#include "semigrowth/monotone.hpp"
#include "semigrowth/spectrum.hpp"

using namespace semigrowth;

namespace {

SpectralModel sqrt_lattice(double k_max) { return SpectralModel::lattice(PowerProfile{0.5, 1.0}, k_max); }

void BM_ResolventEnvelope(benchmark::State& state) {
  const auto model = sqrt_lattice(1e10);
  const auto grid = log_grid(10.0, 1e8, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(resolvent_envelope(model, grid));
}
BENCHMARK(BM_ResolventEnvelope)->Arg(8)->Arg(32);

void BM_GrowthCurve(benchmark::State& state) {
  const auto model = sqrt_lattice(1e10);
  const auto t = log_grid_descending(1e-4, 1e-1, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(growth_curve(model, t));
}
BENCHMARK(BM_GrowthCurve)->Arg(8)->Arg(32);

void BM_SemigroupNormAdaptive(benchmark::State& state) {
  const auto model = sqrt_lattice(std::numeric_limits<double>::infinity());
  for (auto _ : state) benchmark::DoNotOptimize(semigroup_derivative_norm(model, 1e-3));
}
BENCHMARK(BM_SemigroupNormAdaptive);

void BM_MInfTransform(benchmark::State& state) {
  const auto f = MonotoneFn::sample([](double s) { return std::sqrt(s); },
                                    log_grid(1.0, 1e16, static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(m_inf_transform(f));
}
BENCHMARK(BM_MInfTransform)->Arg(16)->Arg(64);

void BM_FindCertificate(benchmark::State& state) {
  const auto f = MonotoneFn::sample([](double s) { return std::sqrt(s) * std::log(s + 1.0); },
                                    log_grid(10.0, 1e8, static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(find_certificate(f));
}
BENCHMARK(BM_FindCertificate)->Arg(16)->Arg(64);

}  // namespace
BENCHMARK_MAIN();
