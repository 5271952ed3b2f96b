#include "moller/elimination.hpp"
#include "moller/hpt.hpp"
#include "moller/models.hpp"
#include "moller/moller_map.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace moller;

namespace {

SparseMatrix random_matrix(std::size_t n, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
    std::bernoulli_distribution keep(0.3);
    SparseMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (keep(rng))
                m.set(r, c, make_rational(num(rng), den(rng)));
    return m;
}

void BM_RrefSparse(benchmark::State& state)
{
    SparseMatrix m = random_matrix(static_cast<std::size_t>(state.range(0)), 7);
    for (auto _ : state)
        benchmark::DoNotOptimize(rref_sparse(m));
}
BENCHMARK(BM_RrefSparse)->Arg(16)->Arg(32)->Arg(64);

void BM_RrefDense(benchmark::State& state)
{
    SparseMatrix m = random_matrix(static_cast<std::size_t>(state.range(0)), 7);
    for (auto _ : state)
        benchmark::DoNotOptimize(rref_dense(m));
}
BENCHMARK(BM_RrefDense)->Arg(16)->Arg(32)->Arg(64);

void BM_SymLiftCircle(benchmark::State& state)
{
    DeformationRetract r = hodge_retract(circle_complex(6));
    for (auto _ : state)
        benchmark::DoNotOptimize(sym_lift_retract(r, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_SymLiftCircle)->Arg(2)->Arg(3);

void BM_BuildCE(benchmark::State& state)
{
    CSModel cs = cs_model(sl2(), CSVariant::Inflated, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(build_ce(cs.structure, static_cast<int>(state.range(0)), 3));
}
BENCHMARK(BM_BuildCE)->Arg(2)->Arg(4);

void BM_TowerCS(benchmark::State& state)
{
    CEAlgebra a = build_ce(cs_model(sl2(), CSVariant::Minimal).structure, static_cast<int>(state.range(0)), 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(obstruction_tower(a, 3, a.window));
}
BENCHMARK(BM_TowerCS)->Arg(2)->Arg(4);

void BM_TowerKG(benchmark::State& state)
{
    CEAlgebra a = build_ce(kg_toy(2, SparseMatrix::from_dense({{Rational(1), Rational(1)}, {Rational(1), Rational(1)}}), 4).structure,
                           static_cast<int>(state.range(0)), 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(obstruction_tower(a, 2, a.window));
}
BENCHMARK(BM_TowerKG)->Arg(3)->Arg(5);

void BM_TransferCE(benchmark::State& state)
{
    CSModel cs = cs_model(sl2(), CSVariant::Inflated, 2);
    CEAlgebra a = build_ce(cs.structure, 4, 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(transfer_ce(a, cs.retract));
}
BENCHMARK(BM_TransferCE);

} // namespace

BENCHMARK_MAIN();
