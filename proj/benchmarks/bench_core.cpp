#include <benchmark/benchmark.h>

#include "quiverks/decompose.hpp"
#include "quiverks/fitting.hpp"
#include "quiverks/generate.hpp"
#include "quiverks/pairing.hpp"

namespace {

using namespace qks;

const PrimeField kField(101);

Representation<PrimeField> loop_of_size(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  auto q = Quiver::make({"x"}, {{"f", "x", "x"}});
  auto half = random_rep(q, Realization::trivial(q), {n / 2}, kField, rng);
  auto rest = random_rep(q, Realization::trivial(q), {n - n / 2}, kField, rng);
  return direct_sum(half, rest).sum;
}

void BM_Rref(benchmark::State& state) {
  Rng rng(1);
  auto n = static_cast<std::size_t>(state.range(0));
  auto m = Matrix<PrimeField>::random(kField, n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(rref(m));
}
BENCHMARK(BM_Rref)->RangeMultiplier(2)->Range(8, 128);

void BM_EndDirect(benchmark::State& state) {
  auto rho = loop_of_size(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(end_algebra(rho));
}
BENCHMARK(BM_EndDirect)->DenseRange(4, 12, 4);

void BM_EndCentralizers(benchmark::State& state) {
  auto rho = loop_of_size(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(end_via_centralizers(rho));
}
BENCHMARK(BM_EndCentralizers)->DenseRange(4, 12, 4);

void BM_KrullSchmidt(benchmark::State& state) {
  auto rho = loop_of_size(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) {
    Rng rng(1);
    benchmark::DoNotOptimize(krull_schmidt(rho, rng));
  }
}
BENCHMARK(BM_KrullSchmidt)->DenseRange(4, 12, 4);

void BM_FittingSplit(benchmark::State& state) {
  auto rho = loop_of_size(static_cast<std::size_t>(state.range(0)), 4);
  Rng rng(5);
  auto t = random_singular_endomorphism(rho, rng);
  for (auto _ : state) benchmark::DoNotOptimize(fitting_split(rho, t));
}
BENCHMARK(BM_FittingSplit)->DenseRange(4, 12, 4);

void BM_OrthogonalDecompose(benchmark::State& state) {
  Rng gen(6);
  auto w = random_decomposable_pairing(kField, 4, 4, 2, gen);
  for (auto _ : state) {
    Rng rng(1);
    benchmark::DoNotOptimize(orthogonal_decompose(w, rng));
  }
}
BENCHMARK(BM_OrthogonalDecompose);

}  // namespace

BENCHMARK_MAIN();
