#include <random>

#include <benchmark/benchmark.h>

#include "borderfloer/fixtures.hpp"
#include "borderfloer/knot_cfd.hpp"
#include "borderfloer/pipeline.hpp"
#include "../tests/random_complex.hpp"

using namespace borderfloer;

namespace {

Execution mode(const benchmark::State& st) { return st.range(0) ? Execution::Parallel : Execution::Serial; }

void BM_Sweep(benchmark::State& st) {
    auto J = builtin_model("trefoil_rh"), K = builtin_model("figure_eight");
    fixtures();
    for (auto _ : st) benchmark::DoNotOptimize(sweep(J, K, {-1, 5}, {-3, 3}, {}, mode(st)));
}

void BM_Glue(benchmark::State& st) {
    const auto& fx = fixtures();
    auto j = build_cfd({builtin_model("figure_eight"), -3, "rho"});
    auto k = build_cfd({builtin_model("trefoil_lh"), 1, "sigma"});
    TensorOptions opts;
    opts.execution = mode(st);
    for (auto _ : st) benchmark::DoNotOptimize(glue_filtered_complex(fx.cfaa_y_b3_reference, j, k, opts));
}

void BM_F2Rank(benchmark::State& st) {
    const std::size_t n = 1500;
    std::mt19937_64 rng(3);
    std::vector<std::vector<std::uint64_t>> m(n, std::vector<std::uint64_t>((n + 63) / 64));
    for (auto& row : m)
        for (auto& w : row) w = rng() & rng();
    for (auto _ : st) benchmark::DoNotOptimize(f2_rank(m, n, mode(st)));
}

void BM_Reduce(benchmark::State& st) {
    std::mt19937_64 rng(9);
    std::vector<testing::RandomComplex> cs;
    for (int i = 0; i < 20; ++i) cs.push_back(testing::random_filtered_complex(rng, 200));
    for (auto _ : st)
        for (const auto& c : cs) benchmark::DoNotOptimize(reduce(c.complex));
}

}  // namespace

BENCHMARK(BM_Sweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Glue)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_F2Rank)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Reduce)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
