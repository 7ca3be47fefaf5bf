#include "superspec/cech_complex.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace superspec;
using namespace superspec::cech;

namespace {

RationalMatrix dense_matrix(size_t n, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> coeff(-9, 9);
    RationalMatrix m(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            m(i, j) = Rational(coeff(rng), 1 + static_cast<int>(rng() % 4)), m(i, j).canonicalize();
    return m;
}

SheafModel rank11(int window)
{
    SheafModel m;
    m.twists.a = {-1, -1};
    m.even_twists = {0};
    m.odd_twists = {0};
    m.window = window;
    return m;
}

void BM_Rref(benchmark::State& state)
{
    auto m = dense_matrix(static_cast<size_t>(state.range(0)), 7);
    for (auto _ : state)
        benchmark::DoNotOptimize(rref(m));
}
BENCHMARK(BM_Rref)->Arg(8)->Arg(16)->Arg(32)->Arg(48);

void BM_CechPage(benchmark::State& state)
{
    auto cc = build_cech_complex(rank11(static_cast<int>(state.range(0))));
    for (auto _ : state)
        benchmark::DoNotOptimize(compute_page(cc.complex, 2));
    state.counters["dim C0"] = static_cast<double>(cc.complex.dim(0));
}
BENCHMARK(BM_CechPage)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_CohomologyWithStabilization(benchmark::State& state)
{
    auto m = rank11(2);
    for (auto _ : state)
        benchmark::DoNotOptimize(stabilization_check(m));
}
BENCHMARK(BM_CohomologyWithStabilization)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
