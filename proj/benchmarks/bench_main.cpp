#include <fracbvp/fracbvp.hpp>

#include <benchmark/benchmark.h>

namespace {

using namespace fracbvp;

void BM_Assemble(benchmark::State& state) {
    const auto p = test_problem_1(1.5);
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(assemble(p, n));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_Assemble)->RangeMultiplier(2)->Range(64, 2048)->Complexity(benchmark::oNSquared);

void solve_bench(benchmark::State& state, Solver solver) {
    const auto sys = assemble(test_problem_1(1.5), static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve(sys, solver));
    }
    state.SetComplexityN(state.range(0));
}

void BM_SolveLU(benchmark::State& state) { solve_bench(state, Solver::lu); }
BENCHMARK(BM_SolveLU)->RangeMultiplier(2)->Range(64, 512)->Complexity(benchmark::oNCubed);

void BM_SolveHessenberg(benchmark::State& state) { solve_bench(state, Solver::hessenberg); }
BENCHMARK(BM_SolveHessenberg)->RangeMultiplier(2)->Range(64, 4096)->Complexity(benchmark::oNSquared);

void BM_SolveForward(benchmark::State& state) { solve_bench(state, Solver::forward); }
BENCHMARK(BM_SolveForward)->RangeMultiplier(2)->Range(64, 4096)->Complexity(benchmark::oNSquared);

void BM_EliminateCol0(benchmark::State& state) {
    const auto sys = assemble(test_problem_2(1.5), static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(eliminate_col0(sys.matrix()));
    }
}
BENCHMARK(BM_EliminateCol0)->RangeMultiplier(4)->Range(64, 4096);

}  // namespace

BENCHMARK_MAIN();
