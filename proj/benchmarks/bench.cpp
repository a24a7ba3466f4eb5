#include <benchmark/benchmark.h>

#include "pgiso/group.hpp"
#include "pgiso/isometry.hpp"
#include "pgiso/oracle.hpp"
#include "pgiso/rng.hpp"

using namespace pgiso;

static void BM_rank(benchmark::State& state) {
    Prime p(3);
    Rng rng(1);
    FpMatrix a = random_matrix(p, state.range(0), state.range(0), rng);
    for (auto _ : state) benchmark::DoNotOptimize(rank(a));
}
BENCHMARK(BM_rank)->Arg(8)->Arg(32)->Arg(128);

static void BM_guided_transport(benchmark::State& state) {
    Prime p(3);
    const std::size_t n = state.range(0), m = state.range(1);
    Rng rng(2);
    auto g = random_tensor(p, m, n, 7);
    FpMatrix n0 = random_invertible(p, n, rng), m0 = random_invertible(p, m, rng);
    auto h = transform(g, n0, m0);
    IsometryConfig c;
    c.transport = std::make_pair(n0, m0);
    for (auto _ : state) benchmark::DoNotOptimize(tensor_isometry(g, h, c).verdict);
}
BENCHMARK(BM_guided_transport)->Args({2, 1})->Args({3, 2})->Args({4, 2})->Args({5, 2});

static void BM_space_oracle(benchmark::State& state) {
    Prime p(3);
    const std::size_t n = state.range(0);
    auto g = random_tensor(p, 2, n, 3), h = random_tensor(p, 2, n, 4);
    for (auto _ : state) benchmark::DoNotOptimize(space_isometry_bruteforce(space_of(g), space_of(h)));
}
BENCHMARK(BM_space_oracle)->Arg(3)->Arg(4);

static void BM_group_oracle(benchmark::State& state) {
    Prime p(3);
    auto g = group_from_tensor(random_tensor(p, 1, 2, 1)), h = group_from_tensor(random_tensor(p, 1, 2, 2));
    for (auto _ : state) benchmark::DoNotOptimize(group_isom_bruteforce(g, h));
}
BENCHMARK(BM_group_oracle);
BENCHMARK_MAIN();
