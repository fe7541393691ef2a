// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "bimorph/bimorphism.hpp"
#include "bimorph/fta.hpp"
#include "bimorph/io.hpp"
#include "support/random_instances.hpp"

using namespace bimorph;

namespace {

// Right spine of f over unary g chains: about 7x more trees per height.
Fta wide_language()
{
    return parse_fta("ranked: f/2 g/1 a/0 b/0\nstates: q p\nfinal: q\n"
                     "q -> f(q,p)\nq -> g(q)\nq -> a\np -> g(p)\np -> b\n");
}

Bimorphism wide_bimorphism()
{
    Fta l = wide_language();
    TreeHom phi = parse_hom("f/2 |-> f(x1,x2)\ng/1 |-> g(x1)\na/0 |-> a\nb/0 |-> b\n");
    TreeHom psi = parse_hom("f/2 |-> h(x2,x1)\ng/1 |-> x1\na/0 |-> c\nb/0 |-> d(c)\n");
    return {phi, l, psi};
}

void BM_enumerate(benchmark::State& state)
{
    Fta l = wide_language();
    for (auto _ : state)
        benchmark::DoNotOptimize(enumerate(l, static_cast<std::size_t>(state.range(0))).size());
}

void BM_enumerate_serial(benchmark::State& state)
{
    Fta l = wide_language();
    for (auto _ : state)
        benchmark::DoNotOptimize(enumerate_serial(l, static_cast<std::size_t>(state.range(0))).size());
}

void BM_relation(benchmark::State& state)
{
    Bimorphism b = wide_bimorphism();
    for (auto _ : state)
        benchmark::DoNotOptimize(relation(b, static_cast<std::size_t>(state.range(0))).size());
}

void BM_relation_serial(benchmark::State& state)
{
    Bimorphism b = wide_bimorphism();
    for (auto _ : state)
        benchmark::DoNotOptimize(relation_serial(b, static_cast<std::size_t>(state.range(0))).size());
}

} // namespace

BENCHMARK(BM_enumerate)->DenseRange(5, 7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_enumerate_serial)->DenseRange(5, 7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_relation)->DenseRange(5, 7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_relation_serial)->DenseRange(5, 7)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
