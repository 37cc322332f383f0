#include <benchmark/benchmark.h>

#include "fmpartners/fmcount.hpp"
#include "fmpartners/lattice.hpp"
#include "fmpartners/modarith.hpp"
#include "fmpartners/mukai.hpp"

using namespace fmpartners;

static void BM_UnitSquareRootSweep(benchmark::State& state) {
  const auto limit = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    std::uint64_t sum = 0;
    for (std::uint64_t n = 1; n <= limit; ++n) sum += modarith::unit_square_root_count(n);
    benchmark::DoNotOptimize(sum);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_UnitSquareRootSweep)->Arg(10'000)->Arg(100'000);

static void BM_FactorizeLarge(benchmark::State& state) {
  // Product of two primes near 2^31.
  const std::uint64_t n = 2147483647ull * 2147483629ull;
  for (auto _ : state) benchmark::DoNotOptimize(modarith::factorize(n));
}
BENCHMARK(BM_FactorizeLarge);

static void BM_CountMST(benchmark::State& state) {
  const auto dp = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fmcount::count_M_ST(dp));
}
BENCHMARK(BM_CountMST)->Arg(10)->Arg(200)->Arg(10'000);

static void BM_GlueOracle(benchmark::State& state) {
  const auto dp = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fmcount::glue_oracle_count(dp));
}
BENCHMARK(BM_GlueOracle)->Arg(10)->Arg(200)->Arg(1'000);

static void BM_ExhaustiveOracle(benchmark::State& state) {
  const auto dp = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fmcount::glue_oracle_exhaustive(dp));
}
BENCHMARK(BM_ExhaustiveOracle)->Arg(5)->Arg(10);

static void BM_DiscriminantGroupT(benchmark::State& state) {
  const auto t = mukai::build_T(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lattice::discriminant_group(t));
}
BENCHMARK(BM_DiscriminantGroupT)->Arg(1)->Arg(50);

static void BM_AssembleOverlattice(benchmark::State& state) {
  const auto dp = static_cast<std::uint64_t>(state.range(0));
  const auto descriptors = fmcount::enumerate_all(dp);
  for (auto _ : state)
    for (const auto& desc : descriptors) benchmark::DoNotOptimize(fmcount::assemble(desc, dp));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(descriptors.size()));
}
BENCHMARK(BM_AssembleOverlattice)->Arg(3)->Arg(50);
BENCHMARK_MAIN();
