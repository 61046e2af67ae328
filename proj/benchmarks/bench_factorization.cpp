#include <benchmark/benchmark.h>

#include "loopfactor/factorization.hpp"
#include "loopfactor/sampling.hpp"

using namespace loopfactor;

static void BM_FactorGstarGL(benchmark::State& state) {
  const CartanWeylBasis lie(int(state.range(0)));
  Sampler s(lie, 3);
  const LoopElement l = s.random_Gstar(int(state.range(1)), 3) * s.random_GL(2);
  for (auto _ : state) benchmark::DoNotOptimize(factor_Gstar_GL(l));
}
BENCHMARK(BM_FactorGstarGL)->ArgsProduct({{2, 3}, {1, 2, 4}})->Unit(benchmark::kMicrosecond);

static void BM_FactorGRGstar(benchmark::State& state) {
  const CartanWeylBasis lie(int(state.range(0)));
  Sampler s(lie, 4);
  const LoopElement K = s.random_GR(int(state.range(1)), 3) * s.random_Gstar(int(state.range(1)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(factor_GR_Gstar(K));
}
BENCHMARK(BM_FactorGRGstar)->ArgsProduct({{2, 3}, {1, 2, 4}})->Unit(benchmark::kMicrosecond);

static void BM_InftyCartan(benchmark::State& state) {
  const CartanWeylBasis lie(int(state.range(0)));
  Sampler s(lie, 5);
  const LoopElement sx = compose_phi(s.random_GR(2, 2), s.random_chamber_point().exp(lie), s.random_GR(2, 2));
  for (auto _ : state) benchmark::DoNotOptimize(infty_cartan(sx, lie));
}
BENCHMARK(BM_InftyCartan)->Arg(2)->Arg(3)->Unit(benchmark::kMicrosecond);
