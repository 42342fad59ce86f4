#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "vicsim/bipartite.hpp"
#include "vicsim/entanglement.hpp"
#include "vicsim/qlinalg.hpp"
#include "vicsim/vsystem.hpp"

namespace {

using namespace vicsim;

ComplexMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  ComplexMatrix a(n, n);
  for (auto& z : a.entries()) z = Complex(g(rng), g(rng));
  return a + a.adjoint();
}

void BM_HermitianEig(benchmark::State& state) {
  const auto h = random_hermitian(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(h));
}
BENCHMARK(BM_HermitianEig)->Arg(4)->Arg(9)->Arg(81);

void BM_ExpmLiouvillian(benchmark::State& state) {
  const VParams v{1.0, std::sqrt(2.0), 1.0};
  const auto l = state.range(0) == 9 ? build_liouvillian(v) : joint_liouvillian(v, v);
  for (auto _ : state) benchmark::DoNotOptimize(expm(l * Complex(2.0)));
}
BENCHMARK(BM_ExpmLiouvillian)->Arg(9)->Arg(81);

void BM_EvolvePair(benchmark::State& state) {
  const VParams v{1.0, std::sqrt(2.0), state.range(0) == 1 ? 1.0 : 0.5};
  const auto psi = bell_state(BellKind::Psi);
  for (auto _ : state) benchmark::DoNotOptimize(evolve_pair(v, v, psi, 1.3));
}
BENCHMARK(BM_EvolvePair)->Arg(1)->Arg(0);

void BM_ConcurrenceWootters(benchmark::State& state) {
  const auto rho = project_to_qubits(evolve_pair(VParams{1.0, 1.0, 1.0}, VParams{1.0, 1.0, 1.0},
                                                 bell_state(BellKind::Psi), 0.4));
  for (auto _ : state) benchmark::DoNotOptimize(concurrence_wootters(rho));
}
BENCHMARK(BM_ConcurrenceWootters);

void BM_Curve(benchmark::State& state) {
  const VParams v{1.0, std::sqrt(2.0), 1.0};
  const auto grid = uniform_grid(10.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(concurrence_curve(v, BellKind::Phi, grid, CurveMethod::Oracle));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Curve)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_EsdScan(benchmark::State& state) {
  const VParams v{1.0, 1.0, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(esd_time(v, BellKind::Psi, CurveMethod::Oracle));
}
BENCHMARK(BM_EsdScan)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
