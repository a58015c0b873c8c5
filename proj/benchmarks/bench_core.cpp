#include <benchmark/benchmark.h>

#include "fwer/bounds.hpp"
#include "fwer/monte_carlo.hpp"
#include "fwer/special_functions.hpp"

namespace {

void BM_NormalCdf(benchmark::State& state) {
    double x = -6.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fwer::std_normal_cdf(x));
        x += 0.001;
        if (x > 6.0) x = -6.0;
    }
}
BENCHMARK(BM_NormalCdf);

void BM_NormalQuantile(benchmark::State& state) {
    double p = 0.001;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fwer::std_normal_quantile(p));
        p += 0.0001;
        if (p > 0.999) p = 0.001;
    }
}
BENCHMARK(BM_NormalQuantile);

void BM_MonhorIntegral(benchmark::State& state) {
    const double rho = state.range(0) / 100.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fwer::monhor_integral(3.29, rho));
    }
}
BENCHMARK(BM_MonhorIntegral)->Arg(10)->Arg(50)->Arg(90)->Arg(99);

void BM_BvnOracle(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(fwer::bvn_cdf_oracle(2.5, 0.6));
    }
}
BENCHMARK(BM_BvnOracle);

void BM_BestBound(benchmark::State& state) {
    const fwer::TestProblem problem(100, 0.05);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fwer::best_bound(problem, fwer::Equicorrelation(0.4)));
    }
}
BENCHMARK(BM_BestBound);

void BM_EstimateFwer(benchmark::State& state) {
    const fwer::TestProblem problem(static_cast<int>(state.range(0)), 0.05);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            fwer::estimate_fwer(problem, fwer::Equicorrelation(0.5), 1000, 42, 1));
    }
    state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_EstimateFwer)->Arg(10)->Arg(100)->Arg(500);

}  // namespace

BENCHMARK_MAIN();
