#include <benchmark/benchmark.h>

#include "loopfactor/oracle.hpp"
#include "loopfactor/rmatrix.hpp"
#include "loopfactor/symplectic.hpp"

using namespace loopfactor;

static void BM_RegistryCase(benchmark::State& state) {
  const CartanWeylBasis lie(2);
  Sampler s(lie, 2024);
  const auto cases = registry_cases(OraclePoints::sample(s));
  const auto& c = cases.at(state.range(0));
  const AffineBasis basis(lie, int(state.range(1)));
  BracketContext ctx(lie);
  for (auto _ : state) benchmark::DoNotOptimize(run_oracle(c, basis, ctx, 2));
  state.SetLabel(c.name);
}
// one cheap holomorphic case, the double, one chiral case
BENCHMARK(BM_RegistryCase)->ArgsProduct({{0, 8, 16}, {4, 6}})->Unit(benchmark::kMillisecond);

static void BM_PiOmegaMatrices(benchmark::State& state) {
  const CartanWeylBasis lie(int(state.range(0)));
  const AffineBasis basis(lie, 6);
  Sampler s(lie, 6);
  const CartanPoint a = s.random_chamber_point();
  for (auto _ : state) {
    const auto P = pi_infty_matrix(basis, a);
    benchmark::DoNotOptimize(P * omega_infty_matrix(basis, a));
  }
}
BENCHMARK(BM_PiOmegaMatrices)->Arg(2)->Arg(3);

static void BM_FelderR(benchmark::State& state) {
  const CartanWeylBasis lie(int(state.range(0)));
  Eigen::VectorXd phi = Eigen::VectorXd::Constant(lie.rank(), 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(limit_deviation(lie, phi, 1.3, -8.0, 1));
}
BENCHMARK(BM_FelderR)->Arg(2)->Arg(3);

BENCHMARK_MAIN();
