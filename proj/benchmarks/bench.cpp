#include <benchmark/benchmark.h>

#include <opsolve/catalog.hpp>
#include <opsolve/mellin.hpp>
#include <opsolve/solver.hpp>

using namespace opsolve;

static void BM_SolveBesselExact(benchmark::State &state)
{
    const OdeProblem p = problems::bessel(Scalar::rational(1, 3));
    const int order = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve(p, RootChoice::First, Scalar::rational(1, 1), Scalar::rational(0, 1), order));
    }
}
BENCHMARK(BM_SolveBesselExact)->Arg(12)->Arg(24)->Arg(48);

static void BM_SolveGaussExact(benchmark::State &state)
{
    const OdeProblem p =
        problems::gauss(Scalar::rational(1, 2), Scalar::rational(1, 3), Scalar::rational(5, 4));
    const int order = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve(p, RootChoice::First, Scalar::rational(1, 1), Scalar::rational(0, 1), order));
    }
}
BENCHMARK(BM_SolveGaussExact)->Arg(12)->Arg(24);

static void BM_LogSecond(benchmark::State &state)
{
    const OdeProblem p = problems::bessel(Scalar::rational(1, 1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_log_second(p, 1, 18));
    }
}
BENCHMARK(BM_LogSecond);

static void BM_Contour(benchmark::State &state)
{
    const CatalogFamily families[] = {
        CatalogFamily::exp(),
        CatalogFamily::bessel(Scalar::rational(0, 1)),
        CatalogFamily::hyp2f1(Scalar::rational(1, 2), Scalar::rational(1, 3), Scalar::rational(5, 4)),
    };
    const CatalogFamily &family = families[state.range(0)];
    const ContourSpec spec = recommended_contour(family);
    for (auto _ : state) {
        benchmark::DoNotOptimize(contour_eval(family, 0.5, spec));
    }
    state.SetLabel(family.name());
}
BENCHMARK(BM_Contour)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
