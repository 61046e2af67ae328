#include <benchmark/benchmark.h>

#include "loopfactor/affine_basis.hpp"
#include "loopfactor/sampling.hpp"

using namespace loopfactor;

static void BM_LoopMultiply(benchmark::State& state) {
  const CartanWeylBasis lie(int(state.range(0)));
  Sampler s(lie, 1);
  const LoopElement a = s.random_algebra_loop(int(state.range(1)));
  const LoopElement b = s.random_algebra_loop(int(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_LoopMultiply)->ArgsProduct({{2, 3}, {2, 6, 12}});

static void BM_LoopInverse(benchmark::State& state) {
  const CartanWeylBasis lie(int(state.range(0)));
  Sampler s(lie, 2);
  const LoopElement g = s.random_Gstar(2, int(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(inverse(g));
}
BENCHMARK(BM_LoopInverse)->ArgsProduct({{2, 3}, {1, 3}});

static void BM_AffineBasis(benchmark::State& state) {
  const CartanWeylBasis lie(int(state.range(0)));
  for (auto _ : state) {
    AffineBasis b(lie, int(state.range(1)));
    benchmark::DoNotOptimize(b.dimension());
  }
}
BENCHMARK(BM_AffineBasis)->ArgsProduct({{2, 3}, {2, 6}});
